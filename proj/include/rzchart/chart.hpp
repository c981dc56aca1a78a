#pragma once

#include "rzchart/ratio_dist.hpp"
#include "rzchart/var1.hpp"

namespace rzchart {

/// Shewhart-RZ probability limits with the inputs they were designed from.
struct ChartDesign {
    double lcl = 0.0;
    double ucl = 0.0;
    double alpha = 0.0;
    int n = 1;
    double z0 = 0.0;
    double rho0 = 0.0;
    SubgroupStats in_control_stats;

    RatioParams in_control_params() const {
        return {in_control_stats.gamma_xbar, in_control_stats.gamma_ybar,
                in_control_stats.omega_bar, in_control_stats.rho_bar};
    }
};

/// Out-of-control condition: the ratio shifts to z1 = tau * z0 and the raw
/// correlation to rho1.
struct ShiftSpec {
    double tau = 1.0;
    double rho1 = 0.0;

    void validate() const;
};

enum class ReportKind { analytic, empirical };

struct RunLengthReport {
    ReportKind kind = ReportKind::analytic;
    double beta = 0.0;  // non-detection probability (analytic only)
    double arl = 1.0;
    bool arl_infinite = false;  // beta rounded to 1 within double precision
    // Empirical fields.
    double stderr_ = 0.0;
    long long replications = 0;
    long long censored = 0;  // runs truncated at the cap (report is a lower bound)
};

/// Probability limits at false-alarm rate alpha: the alpha/2 and 1-alpha/2
/// quantiles of the in-control subgroup-ratio distribution.
ChartDesign design_chart(const Var1Model& model, int n, double alpha);

/// Convenience wrapper for the (gamma_x, gamma_y, rho0, Phi, z0) table
/// parameterization.
ChartDesign design_chart_from_ratios(double gamma_x, double gamma_y, double rho0,
                                     const Mat2& phi, double z0, int n, double alpha);

/// Ratio-distribution parameters under a shift: gamma_xbar/gamma_ybar held
/// at their in-control values, rho_bar recomputed through the correlation
/// transfer factor, omega_bar rescaled linearly with z1.
RatioParams out_of_control_params(const ChartDesign& design, const ShiftSpec& shift);

/// Analytic run length: beta = F_Z(UCL | shifted) - F_Z(LCL | shifted),
/// ARL = 1/(1-beta).
RunLengthReport arl(const ChartDesign& design, const ShiftSpec& shift);

/// Expected ARL over a uniform shift distribution on [a, b], by fixed-order
/// Gauss-Legendre quadrature.
double earl(const ChartDesign& design, double a, double b, double rho1,
            int order = 64);

/// Expected ARL as the mean of ARL over the discrete shift grid
/// {a, a+step, ...} inside [a, b], excluding tau = 1. This is the form the
/// published performance figures use (the continuous integral is dominated
/// by the ARL0 spike at tau -> 1).
double earl_grid(const ChartDesign& design, double a, double b, double rho1,
                 double step = 0.01);

enum class Verdict { in_control, out_of_control };

/// Boundary values count as in-control.
inline Verdict classify(const ChartDesign& design, double zbar) {
    return (zbar < design.lcl || zbar > design.ucl) ? Verdict::out_of_control
                                                    : Verdict::in_control;
}

/// alpha <-> ARL0 = 1/alpha.
inline double alpha_from_arl0(double arl0) { return 1.0 / arl0; }

}  // namespace rzchart
