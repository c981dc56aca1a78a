#pragma once

#include <utility>

#include "rzchart/matrix2.hpp"

namespace rzchart {

/// Bivariate VAR(1) process law: W_t = mu + Phi (W_{t-1} - mu) + eps_t,
/// eps_t ~ N(0, sigma_eps).
struct Var1Model {
    Vec2 mu;         // (mu_X, mu_Y)
    Mat2 phi;        // transition matrix
    Mat2 sigma_eps;  // innovation covariance (symmetric PSD)

    /// Throws validation_error on an ill-formed model (asymmetric or
    /// indefinite sigma_eps, mu_Y == 0) and stationarity_error when the
    /// spectral radius of phi is not strictly below 1.
    void validate() const;

    bool is_stationary() const;

    double ratio() const { return mu.x / mu.y; }
};

/// Stationary covariance of the process observations.
struct StationaryCov {
    Mat2 sigma_w;
    double rho;  // correlation sigma_XY / (sigma_X sigma_Y)

    double sigma_x() const { return std::sqrt(sigma_w.a11); }
    double sigma_y() const { return std::sqrt(sigma_w.a22); }
};

/// Parameters of the subgroup-mean vector (Xbar, Ybar) for subgroup size n.
struct SubgroupStats {
    int n = 1;
    Mat2 sigma_wbar;
    double gamma_xbar = 0.0;  // sigma_Xbar / mu_X
    double gamma_ybar = 0.0;  // sigma_Ybar / mu_Y
    double rho_bar = 0.0;     // corr(Xbar, Ybar)
    double omega_bar = 0.0;   // sigma_Xbar / sigma_Ybar
    double z = 0.0;           // mu_X / mu_Y

    /// Multiplier turning a raw correlation rho into the subgroup-mean
    /// correlation rho_bar (the correlation transfer of the averaging step).
    /// Independent of rho itself; used when shifting rho0 -> rho1.
    double rho_transfer = 1.0;
};

enum class SteinMethod {
    linear_solve,  // 4x4 solve of vec(Sigma_W) = (I4 - Phi (x) Phi)^-1 vec(Sigma_eps)
    closed_form,   // explicit cofactor expansion of the same inverse
    cross_check,   // both, verified to agree
};

/// Stationary covariance Sigma_W solving Sigma_W = Phi Sigma_W Phi^T + Sigma_eps.
StationaryCov stationary_covariance(const Var1Model& model,
                                    SteinMethod method = SteinMethod::cross_check);

/// (Lambda, Pi) with Lambda = sum_{k=1}^{n-1} Phi^k and
/// Pi = sum_{k=1}^{n-1} k Phi^k. Direct summation; the geometric-series
/// closed forms are cross-checked internally when Phi is well-conditioned.
std::pair<Mat2, Mat2> matrix_power_sums(const Mat2& phi, int n);

/// Covariance of the subgroup mean vector and the derived scalar parameters.
SubgroupStats subgroup_covariance(const Var1Model& model, const StationaryCov& cov,
                                  int n);

/// Builds a VAR(1) model whose stationary law has the given coefficients of
/// variation and correlation. Used by the ratio-level (gamma_x, gamma_y,
/// rho, Phi, z) parameterization: mu_Y = 1, mu_X = z, and Sigma_eps is
/// back-solved from the Stein equation.
Var1Model model_from_ratios(double gamma_x, double gamma_y, double rho,
                            const Mat2& phi, double z);

}  // namespace rzchart
