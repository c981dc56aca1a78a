#include <cmath>
#include <random>

#include "doctest.h"
#include "rzchart/errors.hpp"
#include "rzchart/estimation.hpp"
#include "rzchart/simulate.hpp"

using namespace rzchart;

namespace {

Var1Model test_model() {
    Var1Model m;
    m.mu = {10.421, 20.189};
    m.phi = {0.733, 0.474, 0.410, -0.561};
    m.sigma_eps = {1.232, 0.588, 0.588, 1.072};
    return m;
}

}  // namespace

TEST_CASE("estimates converge to the generating model as T grows") {
    const Var1Model truth = test_model();
    std::mt19937_64 gen(987654321);
    // Looser tolerances at short series, tight at T = 1e5. Bounds sized at
    // roughly 4-5 asymptotic standard errors so the test is stable under
    // reseeding yet still detects a broken estimator.
    struct Stage { long long t; double tol_phi, tol_mu; };
    for (const Stage& st : {Stage{1000, 0.12, 0.5}, Stage{10000, 0.04, 0.2},
                            Stage{100000, 0.012, 0.06}}) {
        const auto series = simulate_series(truth, st.t, gen);
        const Var1Fit fit = estimate_var1({series});
        CHECK(fit.stationary);
        CHECK((fit.model.phi - truth.phi).max_abs() < st.tol_phi);
        CHECK((fit.model.sigma_eps - truth.sigma_eps).max_abs() < 10.0 * st.tol_phi);
        CHECK(std::abs(fit.model.mu.x - truth.mu.x) < st.tol_mu);
        CHECK(std::abs(fit.model.mu.y - truth.mu.y) < st.tol_mu);
    }
}

TEST_CASE("residual cross-correlations are small for a correct model") {
    std::mt19937_64 gen(11223344);
    const auto series = simulate_series(test_model(), 20000, gen);
    const Var1Fit fit = estimate_var1({series});
    REQUIRE(fit.residual_autocorr.size() == 4);
    for (const Mat2& r : fit.residual_autocorr)
        CHECK(r.max_abs() < 0.03);  // ~4 / sqrt(T)
}

TEST_CASE("short series is rejected") {
    PhaseISeries series;
    for (int i = 0; i < 9; ++i)
        series.observations.push_back({static_cast<double>(i), 1.0});
    CHECK_THROWS_AS(estimate_var1(series), validation_error);
}

TEST_CASE("constant series is a singular fit") {
    PhaseISeries series;
    for (int i = 0; i < 50; ++i) series.observations.push_back({3.0, 7.0});
    CHECK_THROWS_AS(estimate_var1(series), estimation_error);
}

TEST_CASE("fit from a non-stationary generating process is flagged") {
    // A random walk: Phi-hat should land near 1 and fail the stationarity
    // check without throwing.
    std::mt19937_64 gen(5);
    std::normal_distribution<double> nd(0.0, 1.0);
    PhaseISeries series;
    double x = 0.0, y = 0.0;
    for (int i = 0; i < 5000; ++i) {
        x += nd(gen);
        y += nd(gen);
        series.observations.push_back({x, y});
    }
    const Var1Fit fit = estimate_var1(series);
    CHECK(fit.model.phi.spectral_radius() > 0.98);
}
