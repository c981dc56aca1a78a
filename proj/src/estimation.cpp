#include "rzchart/estimation.hpp"

#include <cmath>

#include "rzchart/errors.hpp"

namespace rzchart {

Var1Fit estimate_var1(const PhaseISeries& series, int min_length, int diagnostic_lags) {
    const auto& w = series.observations;
    const long long t_len = static_cast<long long>(w.size());
    if (t_len < min_length)
        throw validation_error("estimate_var1: series shorter than the minimum length");

    Vec2 mean{0.0, 0.0};
    for (const Vec2& v : w) mean = mean + v;
    mean = mean * (1.0 / static_cast<double>(t_len));

    // Centered lagged cross-products over t = 2..T.
    Mat2 s0 = Mat2::zero();
    Mat2 s1 = Mat2::zero();
    for (long long t = 1; t < t_len; ++t) {
        const Vec2 prev = w[t - 1] - mean;
        const Vec2 cur = w[t] - mean;
        s0 = s0 + Mat2{prev.x * prev.x, prev.x * prev.y, prev.y * prev.x, prev.y * prev.y};
        s1 = s1 + Mat2{cur.x * prev.x, cur.x * prev.y, cur.y * prev.x, cur.y * prev.y};
    }
    const double scale = std::max(1.0, s0.max_abs());
    if (std::abs(s0.det()) < 1e-12 * scale * scale)
        throw estimation_error("estimate_var1: singular lag covariance (constant or collinear series)");

    Var1Fit fit;
    fit.model.mu = mean;
    fit.model.phi = s1 * s0.inverse();
    fit.stationary = fit.model.phi.spectral_radius() < 1.0;

    std::vector<Vec2> resid;
    resid.reserve(static_cast<std::size_t>(t_len - 1));
    Mat2 se = Mat2::zero();
    for (long long t = 1; t < t_len; ++t) {
        const Vec2 e = (w[t] - mean) - fit.model.phi * (w[t - 1] - mean);
        resid.push_back(e);
        se = se + Mat2{e.x * e.x, e.x * e.y, e.y * e.x, e.y * e.y};
    }
    fit.model.sigma_eps = se * (1.0 / static_cast<double>(t_len - 1 - 2));

    // Residual cross-correlations at lags 1..L.
    Mat2 r0 = Mat2::zero();
    Vec2 rmean{0.0, 0.0};
    for (const Vec2& e : resid) rmean = rmean + e;
    rmean = rmean * (1.0 / static_cast<double>(resid.size()));
    for (const Vec2& e0 : resid) {
        const Vec2 e = e0 - rmean;
        r0 = r0 + Mat2{e.x * e.x, e.x * e.y, e.y * e.x, e.y * e.y};
    }
    const double sdx = std::sqrt(r0.a11);
    const double sdy = std::sqrt(r0.a22);
    for (int lag = 1; lag <= diagnostic_lags && lag < static_cast<int>(resid.size());
         ++lag) {
        Mat2 rk = Mat2::zero();
        for (std::size_t t = static_cast<std::size_t>(lag); t < resid.size(); ++t) {
            const Vec2 a = resid[t] - rmean;
            const Vec2 b = resid[t - static_cast<std::size_t>(lag)] - rmean;
            rk = rk + Mat2{a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y};
        }
        fit.residual_autocorr.push_back(
            {rk.a11 / (sdx * sdx), rk.a12 / (sdx * sdy),
             rk.a21 / (sdy * sdx), rk.a22 / (sdy * sdy)});
    }
    return fit;
}

}  // namespace rzchart
