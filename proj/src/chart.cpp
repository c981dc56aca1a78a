#include "rzchart/chart.hpp"

#include <cmath>
#include <limits>

#include "rzchart/errors.hpp"
#include "rzchart/quadrature.hpp"

namespace rzchart {

void ShiftSpec::validate() const {
    if (tau <= 0.0) throw validation_error("ShiftSpec: tau must be > 0");
    if (std::abs(rho1) >= 1.0) throw validation_error("ShiftSpec: |rho1| must be < 1");
}

ChartDesign design_chart(const Var1Model& model, int n, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw validation_error("design_chart: alpha must be in (0,1)");
    const StationaryCov cov = stationary_covariance(model);
    const SubgroupStats stats = subgroup_covariance(model, cov, n);

    ChartDesign d;
    d.alpha = alpha;
    d.n = n;
    d.z0 = model.ratio();
    d.rho0 = cov.rho;
    d.in_control_stats = stats;
    const RatioParams params = d.in_control_params();
    d.lcl = ratio_quantile(alpha / 2.0, params);
    d.ucl = ratio_quantile(1.0 - alpha / 2.0, params);
    return d;
}

ChartDesign design_chart_from_ratios(double gamma_x, double gamma_y, double rho0,
                                     const Mat2& phi, double z0, int n, double alpha) {
    return design_chart(model_from_ratios(gamma_x, gamma_y, rho0, phi, z0), n, alpha);
}

RatioParams out_of_control_params(const ChartDesign& design, const ShiftSpec& shift) {
    shift.validate();
    const SubgroupStats& s = design.in_control_stats;
    if (std::isnan(s.rho_transfer))
        throw numerical_error(
            "out_of_control_params: correlation transfer undefined (non-diagonal Phi "
            "with rho0 = 0)");
    RatioParams p;
    p.gamma_x = s.gamma_xbar;
    p.gamma_y = s.gamma_ybar;
    p.rho = s.rho_transfer * shift.rho1;
    p.omega = (s.gamma_xbar / s.gamma_ybar) * shift.tau * design.z0;
    return p;
}

RunLengthReport arl(const ChartDesign& design, const ShiftSpec& shift) {
    const RatioParams p = out_of_control_params(design, shift);
    RunLengthReport r;
    r.kind = ReportKind::analytic;
    r.beta = ratio_cdf(design.ucl, p) - ratio_cdf(design.lcl, p);
    if (r.beta >= 1.0 - 1e-15) {
        r.arl_infinite = true;
        r.arl = std::numeric_limits<double>::infinity();
    } else {
        r.arl = 1.0 / (1.0 - r.beta);
    }
    return r;
}

double earl(const ChartDesign& design, double a, double b, double rho1, int order) {
    if (!(a < b)) throw validation_error("earl: interval must satisfy a < b");
    if (a <= 0.0) throw validation_error("earl: shift interval must lie in (0, inf)");
    const QuadratureRule rule = gauss_legendre(order);
    const double integral = integrate(
        [&](double tau) { return arl(design, {tau, rho1}).arl; }, a, b, rule);
    return integral / (b - a);
}

double earl_grid(const ChartDesign& design, double a, double b, double rho1,
                 double step) {
    if (!(a < b)) throw validation_error("earl_grid: interval must satisfy a < b");
    if (step <= 0.0) throw validation_error("earl_grid: step must be > 0");
    double sum = 0.0;
    long long count = 0;
    for (long long i = 0;; ++i) {
        const double tau = a + step * static_cast<double>(i);
        if (tau > b + 1e-12) break;
        if (std::abs(tau - 1.0) < 1e-12) continue;  // tau = 1 is the null shift
        sum += arl(design, {tau, rho1}).arl;
        ++count;
    }
    if (count == 0) throw validation_error("earl_grid: no grid points in interval");
    return sum / static_cast<double>(count);
}

}  // namespace rzchart
