#include "rzchart/ratio_dist.hpp"

#include <cmath>
#include <string>

#include "rzchart/errors.hpp"

namespace rzchart {

void RatioParams::validate() const {
    if (gamma_x <= 0.0 || gamma_y <= 0.0)
        throw validation_error("RatioParams: gamma_x and gamma_y must be > 0");
    if (omega <= 0.0) throw validation_error("RatioParams: omega must be > 0");
    if (std::abs(rho) >= 1.0) throw validation_error("RatioParams: |rho| must be < 1");
}

double standard_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// AS241 (Wichura 1988), the double-precision PPND16 variant.
double standard_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw validation_error("standard_normal_quantile: p must be in (0,1)");

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }

    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                    2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                  3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
              (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                    1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                  6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                    1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                  2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
              (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                    1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                  1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -val : val;
}

double ratio_quantile(double p, const RatioParams& params) {
    if (!(p > 0.0 && p < 1.0))
        throw validation_error("ratio_quantile: p must be in (0,1)");
    params.validate();

    const double np = standard_normal_quantile(p);
    const double np2 = np * np;
    const double gx = params.gamma_x, gy = params.gamma_y;
    const double w = params.omega, rho = params.rho;

    const double c1 = 1.0 / (gy * gy) - np2;
    if (c1 <= 0.0)
        throw numerical_error(
            "ratio_quantile: tail probability p=" + std::to_string(p) +
            " outside the approximation domain (normal quantile^2 >= 1/gamma_y^2)");
    const double c2 = 2.0 * w * (rho * np2 - 1.0 / (gx * gy));
    const double c3 = w * w * (1.0 / (gx * gx) - np2);

    const double disc = c2 * c2 - 4.0 * c1 * c3;
    const double sq = std::sqrt(std::max(disc, 0.0));
    return (p <= 0.5) ? (-c2 - sq) / (2.0 * c1) : (-c2 + sq) / (2.0 * c1);
}

double ratio_cdf(double z, const RatioParams& params) {
    params.validate();
    const double gx = params.gamma_x, gy = params.gamma_y;
    const double w = params.omega, rho = params.rho;

    const double num = z * z / (gy * gy) - 2.0 * w * z / (gx * gy) + w * w / (gx * gx);
    const double den = z * z - 2.0 * rho * w * z + w * w;
    const double q = std::sqrt(std::max(num, 0.0) / den);
    return standard_normal_cdf(z >= params.median() ? q : -q);
}

}  // namespace rzchart
