#include <cmath>

#include "doctest.h"
#include "rzchart/chart.hpp"
#include "rzchart/errors.hpp"

using namespace rzchart;

TEST_CASE("null shift gives beta = 1 - alpha and ARL = 1/alpha") {
    for (double alpha : {0.005, 0.01, 0.0027}) {
        for (double phi : {0.0, 0.1, 0.7}) {
            for (double rho : {-0.8, 0.0, 0.4}) {
                const ChartDesign d = design_chart_from_ratios(
                    0.01, 0.01, rho, Mat2::diagonal(phi, phi), 1.0, 5, alpha);
                const RunLengthReport r = arl(d, {1.0, rho});
                CHECK(std::abs(r.beta - (1.0 - alpha)) < 1e-9);
                CHECK(r.arl == doctest::Approx(1.0 / alpha).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("food example design limits") {
    Var1Model m;
    m.mu = {25.0, 25.0};
    m.phi = Mat2::diagonal(0.5, 0.5);
    m.sigma_eps = {0.0625, 0.01, 0.01, 0.0625};
    const ChartDesign d = design_chart(m, 5, alpha_from_arl0(200.0));
    CHECK(d.lcl == doctest::Approx(0.9723582).epsilon(2e-6));
    CHECK(d.ucl == doctest::Approx(1.0284276).epsilon(2e-6));
    CHECK(d.z0 == doctest::Approx(1.0));
    CHECK(d.rho0 == doctest::Approx(0.16).epsilon(1e-10));
}

TEST_CASE("limits tighten as n grows") {
    for (double rho : {-0.8, 0.0, 0.8}) {
        double prev_width = 1e300;
        for (int n : {2, 5, 7, 10, 15}) {
            const ChartDesign d = design_chart_from_ratios(
                0.2, 0.2, rho, Mat2::diagonal(0.1, 0.1), 1.0, n, 0.005);
            const double width = d.ucl - d.lcl;
            CHECK(width < prev_width);
            prev_width = width;
        }
    }
}

TEST_CASE("increasing rho0 raises LCL and lowers UCL on the table grid") {
    for (int n : {2, 5, 15}) {
        double prev_lcl = -1e300, prev_ucl = 1e300;
        for (double rho : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
            const ChartDesign d = design_chart_from_ratios(
                0.2, 0.2, rho, Mat2::diagonal(0.1, 0.1), 1.0, n, 0.005);
            CHECK(d.lcl > prev_lcl);
            CHECK(d.ucl < prev_ucl);
            prev_lcl = d.lcl;
            prev_ucl = d.ucl;
        }
    }
}

TEST_CASE("larger coefficients of variation widen the limits") {
    for (double rho : {-0.4, 0.0, 0.4}) {
        const ChartDesign narrow = design_chart_from_ratios(
            0.01, 0.01, rho, Mat2::diagonal(0.1, 0.1), 1.0, 5, 0.005);
        const ChartDesign wide = design_chart_from_ratios(
            0.2, 0.2, rho, Mat2::diagonal(0.1, 0.1), 1.0, 5, 0.005);
        CHECK(wide.lcl < narrow.lcl);
        CHECK(wide.ucl > narrow.ucl);
    }
}

TEST_CASE("stronger autocorrelation slows detection") {
    // For any non-null shift on the table grid, the chart at phi = 0.7 has a
    // larger out-of-control ARL than at phi = 0.1.
    for (double rho : {-0.8, 0.0, 0.8}) {
        for (int n : {2, 5, 15}) {
            for (double tau : {0.9, 0.95, 0.99, 1.01, 1.05, 1.1}) {
                const ChartDesign weak = design_chart_from_ratios(
                    0.2, 0.2, rho, Mat2::diagonal(0.1, 0.1), 1.0, n, 0.005);
                const ChartDesign strong = design_chart_from_ratios(
                    0.2, 0.2, rho, Mat2::diagonal(0.7, 0.7), 1.0, n, 0.005);
                CHECK(arl(strong, {tau, rho}).arl >= arl(weak, {tau, rho}).arl);
            }
        }
    }
}

TEST_CASE("grid EARL averages the grid ARLs and skips tau = 1") {
    const ChartDesign d = design_chart_from_ratios(
        0.01, 0.01, -0.8, Mat2::diagonal(0.1, 0.1), 1.0, 15, 0.005);
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i <= 10; ++i) {
        const double tau = 0.90 + 0.01 * i;
        if (std::abs(tau - 1.0) < 1e-12) continue;
        sum += arl(d, {tau, -0.8}).arl;
        ++count;
    }
    CHECK(earl_grid(d, 0.90, 1.0, -0.8) ==
          doctest::Approx(sum / count).epsilon(1e-12));
}

TEST_CASE("quadrature EARL converges in the order") {
    const ChartDesign d = design_chart_from_ratios(
        0.01, 0.01, 0.0, Mat2::diagonal(0.1, 0.1), 1.0, 5, 0.005);
    const double coarse = earl(d, 0.90, 0.97, 0.0, 32);
    const double fine = earl(d, 0.90, 0.97, 0.0, 128);
    CHECK(coarse == doctest::Approx(fine).epsilon(1e-6));
}

TEST_CASE("classify treats limits as in-control") {
    ChartDesign d;
    d.lcl = 0.97;
    d.ucl = 1.03;
    CHECK(classify(d, 0.97) == Verdict::in_control);
    CHECK(classify(d, 1.03) == Verdict::in_control);
    CHECK(classify(d, 0.9699) == Verdict::out_of_control);
    CHECK(classify(d, 1.0301) == Verdict::out_of_control);
}

TEST_CASE("shift validation") {
    const ChartDesign d = design_chart_from_ratios(
        0.01, 0.01, 0.0, Mat2::diagonal(0.1, 0.1), 1.0, 5, 0.005);
    CHECK_THROWS_AS(arl(d, {0.0, 0.0}), validation_error);
    CHECK_THROWS_AS(arl(d, {-0.5, 0.0}), validation_error);
    CHECK_THROWS_AS(arl(d, {1.0, 1.0}), validation_error);
    CHECK_THROWS_AS(design_chart_from_ratios(0.01, 0.01, 0.0,
                                             Mat2::diagonal(0.1, 0.1), 1.0, 5, 1.5),
                    validation_error);
}

TEST_CASE("correlation transfer for non-diagonal phi needs a nonzero rho0") {
    const Mat2 phi{0.4, 0.2, -0.1, 0.3};
    const ChartDesign ok = design_chart_from_ratios(0.05, 0.05, 0.3, phi, 1.0, 5, 0.005);
    CHECK_NOTHROW(arl(ok, {0.99, 0.5}));
    const ChartDesign deg = design_chart_from_ratios(0.05, 0.05, 0.0, phi, 1.0, 5, 0.005);
    CHECK_THROWS_AS(arl(deg, {0.99, 0.5}), numerical_error);
}
