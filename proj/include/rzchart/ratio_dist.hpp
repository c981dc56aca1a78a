#pragma once

namespace rzchart {

/// Parameters of the ratio-of-correlated-normals distribution Z = X/Y.
struct RatioParams {
    double gamma_x;  // coefficient of variation of the numerator
    double gamma_y;  // coefficient of variation of the denominator
    double omega;    // sigma_X / sigma_Y
    double rho;      // corr(X, Y)

    void validate() const;

    /// The quadratic-root quantile approximation is calibrated for
    /// coefficients of variation in (0, 0.2]; larger values are accepted
    /// but flagged.
    bool outside_validity_range() const { return gamma_x > 0.2 || gamma_y > 0.2; }

    /// Median of Z; the two quadratic branches of the quantile meet here.
    double median() const { return omega * gamma_y / gamma_x; }
};

/// Standard normal CDF.
double standard_normal_cdf(double x);

/// Standard normal quantile (Wichura's AS241 rational approximation,
/// accurate to well below 1e-9 over (0,1)). Throws on p outside (0,1).
double standard_normal_quantile(double p);

/// Quantile of Z = X/Y: the root of C1 z^2 + C2 z + C3 = 0 with
/// C1 = 1/gy^2 - q_p^2, C2 = 2 w (rho q_p^2 - 1/(gx gy)),
/// C3 = w^2 (1/gx^2 - q_p^2), q_p the standard normal quantile of p.
/// The minus root for p <= 0.5, the plus root for p >= 0.5.
double ratio_quantile(double p, const RatioParams& params);

/// Forward CDF, the exact algebraic inversion of ratio_quantile:
/// F_Z(z) = Phi(sign(z - median) * sqrt(N(z)/D(z))) with
/// N(z) = z^2/gy^2 - 2 w z/(gx gy) + w^2/gx^2 and
/// D(z) = z^2 - 2 rho w z + w^2 (> 0 for |rho| < 1).
double ratio_cdf(double z, const RatioParams& params);

}  // namespace rzchart
