#include "rzchart/var1.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rzchart/errors.hpp"

namespace rzchart {

namespace {

constexpr double kStationarityMargin = 1e-9;
constexpr double kCrossCheckTol = 1e-9;
constexpr double kPsdClipTol = 1e-12;

Mat2 symmetrize(const Mat2& m) {
    const double off = 0.5 * (m.a12 + m.a21);
    return {m.a11, off, off, m.a22};
}

/// Clip a tiny negative eigenvalue caused by round-off; anything worse is
/// left alone (callers validate PSD-ness where it matters).
Mat2 psd_repair(const Mat2& s) {
    const auto ev = symmetric_eigenvalues(s);
    if (ev[0] >= 0.0 || ev[0] < -kPsdClipTol) return s;
    // Project onto the PSD cone: zero out the negative eigenvalue.
    const double lam = ev[1];
    // Eigenvector for lam of [[a,b],[b,c]].
    double vx = s.a12, vy = lam - s.a11;
    if (std::abs(vx) + std::abs(vy) == 0.0) { vx = 1.0; vy = 0.0; }
    const double norm = std::sqrt(vx * vx + vy * vy);
    vx /= norm;
    vy /= norm;
    return {lam * vx * vx, lam * vx * vy, lam * vx * vy, lam * vy * vy};
}

/// vec(Sigma_W) = (I4 - Phi (x) Phi)^-1 vec(Sigma_eps), column-stacked.
Mat2 stein_solve_numeric(const Mat2& phi, const Mat2& se) {
    const double p11 = phi.a11, p12 = phi.a12, p21 = phi.a21, p22 = phi.a22;
    std::array<std::array<double, 4>, 4> a = {{
        {1.0 - p11 * p11, -p11 * p12, -p12 * p11, -p12 * p12},
        {-p11 * p21, 1.0 - p11 * p22, -p12 * p21, -p12 * p22},
        {-p21 * p11, -p21 * p12, 1.0 - p22 * p11, -p22 * p12},
        {-p21 * p21, -p21 * p22, -p22 * p21, 1.0 - p22 * p22},
    }};
    const std::array<double, 4> b = {se.a11, se.a21, se.a12, se.a22};
    std::array<double, 4> v{};
    try {
        v = solve4(a, b);
    } catch (const std::domain_error&) {
        throw stationarity_error(
            "stationary_covariance: I4 - Phi (x) Phi is singular (non-stationary Phi)");
    }
    return {v[0], v[2], v[1], v[3]};
}

/// Cofactor closed form of (I4 - Phi (x) Phi)^-1 applied to vec(Sigma_eps).
Mat2 stein_solve_closed_form(const Mat2& phi, const Mat2& se) {
    const double p11 = phi.a11, p12 = phi.a12, p21 = phi.a21, p22 = phi.a22;
    const double det = p11 * p22 - p12 * p21;
    const double delta =
        (det - 1.0) * (p11 * p11 * p22 * p22 - 2.0 * p11 * p12 * p21 * p22 +
                       p12 * p12 * p21 * p21 - p11 * p11 - 2.0 * p12 * p21 -
                       p22 * p22 + 1.0);
    if (delta == 0.0)
        throw stationarity_error(
            "stationary_covariance: closed-form determinant vanished (non-stationary Phi)");

    const double d11 = -(p11 * p22 * p22 * p22 - p12 * p21 * p22 * p22 -
                         p11 * p22 - p12 * p21 - p22 * p22 + 1.0);
    const double d12 = p12 * (p11 * p22 * p22 - p12 * p21 * p22 - p11);
    const double d14 = -p12 * p12 * (det + 1.0);
    const double d21 = p21 * (p11 * p22 * p22 - p12 * p21 * p22 - p11);
    const double d22 = -(p11 * p11 * p22 * p22 - p11 * p12 * p21 * p22 -
                         p11 * p11 - p12 * p21 - p22 * p22 + 1.0);
    const double d23 = -p21 * p12 * (det + 1.0);
    const double d24 = p12 * (p11 * p11 * p22 - p11 * p12 * p21 - p22);
    const double d41 = -p21 * p21 * (det + 1.0);
    const double d42 = p21 * (p11 * p11 * p22 - p11 * p12 * p21 - p22);
    const double d44 = -(p11 * p11 * p11 * p22 - p11 * p11 * p12 * p21 -
                         p11 * p11 - p11 * p22 - p12 * p21 + 1.0);

    const double sxx = (d11 * se.a11 + 2.0 * d12 * se.a12 + d14 * se.a22) / delta;
    const double sxy = (d21 * se.a11 + (d22 + d23) * se.a12 + d24 * se.a22) / delta;
    const double syy = (d41 * se.a11 + 2.0 * d42 * se.a12 + d44 * se.a22) / delta;
    return {sxx, sxy, sxy, syy};
}

}  // namespace

void Var1Model::validate() const {
    if (!is_stationary())
        throw stationarity_error("Var1Model: spectral radius of phi must be < 1");
    if (std::abs(sigma_eps.a12 - sigma_eps.a21) > 1e-12 * std::max(1.0, sigma_eps.max_abs()))
        throw validation_error("Var1Model: sigma_eps must be symmetric");
    const auto ev = symmetric_eigenvalues(sigma_eps);
    if (ev[0] < -1e-12 * std::max(1.0, sigma_eps.max_abs()))
        throw validation_error("Var1Model: sigma_eps must be positive semi-definite");
    if (mu.y == 0.0)
        throw validation_error("Var1Model: mu_Y must be nonzero (ratio undefined)");
}

bool Var1Model::is_stationary() const {
    return phi.spectral_radius() < 1.0 - kStationarityMargin;
}

StationaryCov stationary_covariance(const Var1Model& model, SteinMethod method) {
    model.validate();
    const Mat2 se = symmetrize(model.sigma_eps);

    Mat2 sw;
    switch (method) {
        case SteinMethod::linear_solve:
            sw = stein_solve_numeric(model.phi, se);
            break;
        case SteinMethod::closed_form:
            sw = stein_solve_closed_form(model.phi, se);
            break;
        case SteinMethod::cross_check: {
            sw = stein_solve_numeric(model.phi, se);
            const Mat2 alt = stein_solve_closed_form(model.phi, se);
            const double scale = std::max(1.0, sw.max_abs());
            if ((sw - alt).max_abs() > kCrossCheckTol * scale)
                throw numerical_error(
                    "stationary_covariance: closed-form and linear-solve routes disagree");
            break;
        }
    }

    sw = psd_repair(symmetrize(sw));
    StationaryCov out{sw, 0.0};
    if (sw.a11 > 0.0 && sw.a22 > 0.0)
        out.rho = sw.a12 / std::sqrt(sw.a11 * sw.a22);
    return out;
}

std::pair<Mat2, Mat2> matrix_power_sums(const Mat2& phi, int n) {
    if (n < 1) throw validation_error("matrix_power_sums: n must be >= 1");

    Mat2 lambda = Mat2::zero();
    Mat2 pi = Mat2::zero();
    Mat2 pk = Mat2::identity();
    for (int k = 1; k <= n - 1; ++k) {
        pk = pk * phi;
        lambda = lambda + pk;
        pi = pi + static_cast<double>(k) * pk;
    }

    // Cross-check against the geometric-series closed forms when phi and
    // I - phi are far enough from singular for them to be trustworthy.
    const Mat2 i_minus = Mat2::identity() - phi;
    if (n > 1 && std::abs(phi.det()) > 1e-8 && std::abs(i_minus.det()) > 1e-8) {
        const Mat2 phin = matrix_power(phi, n);
        const Mat2 phin1 = matrix_power(phi, n - 1);
        const Mat2 im_inv = i_minus.inverse();
        const Mat2 lambda_cf = (phi - phin) * im_inv;
        const Mat2 pi_cf = (phi.inverse() - Mat2::identity()).inverse() *
                           ((Mat2::identity() - phin1) * im_inv -
                            static_cast<double>(n - 1) * phin1);
        const double scale = std::max(1.0, std::max(lambda.max_abs(), pi.max_abs()));
        if ((lambda - lambda_cf).max_abs() > 1e-8 * scale ||
            (pi - pi_cf).max_abs() > 1e-8 * scale)
            throw numerical_error("matrix_power_sums: closed form disagrees with direct sum");
    }
    return {lambda, pi};
}

SubgroupStats subgroup_covariance(const Var1Model& model, const StationaryCov& cov,
                                  int n) {
    if (n < 1) throw validation_error("subgroup_covariance: n must be >= 1");

    const Mat2 sw = cov.sigma_w;
    const auto [lambda, pi] = matrix_power_sums(model.phi, n);
    const auto [lambda_t, pi_t] = matrix_power_sums(model.phi.transpose(), n);

    const double inv_n = 1.0 / static_cast<double>(n);
    // Sigma_W is symmetric, so the trailing Sigma_W^T is just Sigma_W.
    Mat2 swbar = (sw * (Mat2::identity() + lambda_t - inv_n * pi_t) +
                  (lambda - inv_n * pi) * sw) *
                 inv_n;
    swbar = psd_repair(symmetrize(swbar));

    SubgroupStats s;
    s.n = n;
    s.sigma_wbar = swbar;
    s.z = model.ratio();
    const double sx = std::sqrt(swbar.a11);
    const double sy = std::sqrt(swbar.a22);
    s.gamma_xbar = sx / std::abs(model.mu.x);
    s.gamma_ybar = sy / std::abs(model.mu.y);
    s.rho_bar = (sx > 0.0 && sy > 0.0) ? swbar.a12 / (sx * sy) : 0.0;
    s.omega_bar = (s.gamma_xbar / s.gamma_ybar) * s.z;

    // Correlation transfer rho_bar / rho. For diagonal phi it has a closed
    // form independent of rho; otherwise fall back to the observed ratio.
    if (model.phi.is_diagonal(0.0)) {
        // S_ii = sum_{k=1}^{n-1} (n-k) phi_ii^k = n*Lambda_ii - Pi_ii.
        const double s11 = n * lambda.a11 - pi.a11;
        const double s22 = n * lambda.a22 - pi.a22;
        s.rho_transfer = (1.0 + (s11 + s22) * inv_n) /
                         std::sqrt((1.0 + 2.0 * s11 * inv_n) * (1.0 + 2.0 * s22 * inv_n));
    } else if (std::abs(cov.rho) > 1e-12) {
        s.rho_transfer = s.rho_bar / cov.rho;
    } else {
        s.rho_transfer = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

Var1Model model_from_ratios(double gamma_x, double gamma_y, double rho,
                            const Mat2& phi, double z) {
    if (gamma_x <= 0.0 || gamma_y <= 0.0)
        throw validation_error("model_from_ratios: gamma_x and gamma_y must be > 0");
    if (std::abs(rho) >= 1.0)
        throw validation_error("model_from_ratios: |rho| must be < 1");
    if (z == 0.0)
        throw validation_error("model_from_ratios: z must be nonzero");

    Var1Model m;
    m.mu = {z, 1.0};
    m.phi = phi;
    if (!m.is_stationary())
        throw stationarity_error("model_from_ratios: spectral radius of phi must be < 1");
    const double sx = gamma_x * std::abs(z);
    const double sy = gamma_y;
    const Mat2 sw = {sx * sx, rho * sx * sy, rho * sx * sy, sy * sy};
    m.sigma_eps = sw - phi * sw * phi.transpose();
    // Not every stationary law is reachable for a given phi: the back-solved
    // innovation covariance can come out indefinite.
    const auto ev = symmetric_eigenvalues(m.sigma_eps);
    if (ev[0] < -1e-12 * std::max(1.0, m.sigma_eps.max_abs()))
        throw numerical_error(
            "model_from_ratios: requested stationary covariance is not reachable "
            "for this phi (back-solved innovation covariance is indefinite)");
    m.validate();
    return m;
}

}  // namespace rzchart
