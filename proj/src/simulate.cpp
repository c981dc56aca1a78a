#include "rzchart/simulate.hpp"

#include <cmath>

#include "rzchart/errors.hpp"
#include "rzchart/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rzchart {

namespace {

Vec2 draw_gaussian(const Vec2& mean, const Mat2& chol_like, std::mt19937_64& gen) {
    const double u1 = draw_standard_normal(gen);
    const double u2 = draw_standard_normal(gen);
    return mean + chol_like * Vec2{u1, u2};
}

struct RunKernel {
    const Var1Model* model;
    StationaryCov cov;
    Mat2 sqrt_w;    // symmetric sqrt of the stationary covariance
    Mat2 sqrt_eps;  // symmetric sqrt of the innovation covariance
    int n;
    double lcl, ucl;
    long long cap;

    double subgroup_ratio(std::mt19937_64& gen) const {
        Vec2 w = draw_gaussian(model->mu, sqrt_w, gen);
        Vec2 sum = w;
        for (int k = 1; k < n; ++k) {
            const Vec2 eps = draw_gaussian({0.0, 0.0}, sqrt_eps, gen);
            w = model->mu + model->phi * (w - model->mu) + eps;
            sum = sum + w;
        }
        return sum.x / sum.y;
    }

    // Run length for one replication; cap means censored.
    long long one_run(std::uint64_t seed) const {
        std::mt19937_64 gen(seed);
        for (long long t = 1; t <= cap; ++t) {
            const double z = subgroup_ratio(gen);
            if (z < lcl || z > ucl) return t;
        }
        return cap;
    }
};

RunKernel make_kernel(const ChartDesign& design, const SimConfig& cfg) {
    cfg.model.validate();
    if (cfg.n < 1) throw validation_error("empirical_run_length: n must be >= 1");
    if (cfg.replications < 1)
        throw validation_error("empirical_run_length: replications must be >= 1");
    RunKernel k;
    k.model = &cfg.model;
    k.cov = stationary_covariance(cfg.model);
    k.sqrt_w = symmetric_sqrt(k.cov.sigma_w);
    k.sqrt_eps = symmetric_sqrt(cfg.model.sigma_eps);
    k.n = cfg.n;
    k.lcl = design.lcl;
    k.ucl = design.ucl;
    k.cap = cfg.max_run_length;
    return k;
}

RunLengthReport summarize(long long sum, unsigned long long sum_sq,
                          long long censored, const SimConfig& cfg) {
    RunLengthReport r;
    r.kind = ReportKind::empirical;
    r.replications = cfg.replications;
    r.censored = censored;
    const double m = static_cast<double>(cfg.replications);
    r.arl = static_cast<double>(sum) / m;
    const double var =
        (static_cast<double>(sum_sq) - m * r.arl * r.arl) / std::max(1.0, m - 1.0);
    r.stderr_ = std::sqrt(std::max(var, 0.0) / m);
    return r;
}

}  // namespace

std::vector<Vec2> draw_subgroup(const Var1Model& model, const StationaryCov& cov,
                                int n, std::mt19937_64& gen) {
    const Mat2 sqrt_w = symmetric_sqrt(cov.sigma_w);
    const Mat2 sqrt_eps = symmetric_sqrt(model.sigma_eps);
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n));
    Vec2 w = draw_gaussian(model.mu, sqrt_w, gen);
    out.push_back(w);
    for (int k = 1; k < n; ++k) {
        const Vec2 eps = draw_gaussian({0.0, 0.0}, sqrt_eps, gen);
        w = model.mu + model.phi * (w - model.mu) + eps;
        out.push_back(w);
    }
    return out;
}

double draw_subgroup_ratio(const Var1Model& model, const StationaryCov& cov, int n,
                           std::mt19937_64& gen) {
    Vec2 sum{0.0, 0.0};
    for (const Vec2& w : draw_subgroup(model, cov, n, gen)) sum = sum + w;
    return sum.x / sum.y;
}

RunLengthReport empirical_run_length_serial(const ChartDesign& design,
                                            const SimConfig& cfg) {
    const RunKernel kernel = make_kernel(design, cfg);
    long long sum = 0, censored = 0;
    unsigned long long sum_sq = 0;
    for (long long i = 0; i < cfg.replications; ++i) {
        const long long rl = kernel.one_run(subseed(cfg.seed, static_cast<std::uint64_t>(i)));
        sum += rl;
        sum_sq += static_cast<unsigned long long>(rl) * static_cast<unsigned long long>(rl);
        if (rl == cfg.max_run_length) ++censored;
    }
    return summarize(sum, sum_sq, censored, cfg);
}

RunLengthReport empirical_run_length(const ChartDesign& design, const SimConfig& cfg,
                                     bool parallel) {
    if (!parallel) return empirical_run_length_serial(design, cfg);
    const RunKernel kernel = make_kernel(design, cfg);
    long long sum = 0, censored = 0;
    unsigned long long sum_sq = 0;
    // Integer accumulators keep the reduction associative, so the totals
    // match the serial path bit for bit.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : sum, sum_sq, censored)
#endif
    for (long long i = 0; i < cfg.replications; ++i) {
        const long long rl = kernel.one_run(subseed(cfg.seed, static_cast<std::uint64_t>(i)));
        sum += rl;
        sum_sq += static_cast<unsigned long long>(rl) * static_cast<unsigned long long>(rl);
        if (rl == cfg.max_run_length) ++censored;
    }
    return summarize(sum, sum_sq, censored, cfg);
}

std::vector<Vec2> simulate_series(const Var1Model& model, long long t_len,
                                  std::mt19937_64& gen) {
    model.validate();
    const StationaryCov cov = stationary_covariance(model);
    const Mat2 sqrt_w = symmetric_sqrt(cov.sigma_w);
    const Mat2 sqrt_eps = symmetric_sqrt(model.sigma_eps);
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(t_len));
    Vec2 w = draw_gaussian(model.mu, sqrt_w, gen);
    out.push_back(w);
    for (long long t = 1; t < t_len; ++t) {
        const Vec2 eps = draw_gaussian({0.0, 0.0}, sqrt_eps, gen);
        w = model.mu + model.phi * (w - model.mu) + eps;
        out.push_back(w);
    }
    return out;
}

}  // namespace rzchart
