#pragma once

#include <vector>

#include "rzchart/var1.hpp"

namespace rzchart {

/// Ordered Phase I observations (x_t, y_t).
struct PhaseISeries {
    std::vector<Vec2> observations;

    std::size_t length() const { return observations.size(); }
};

struct Var1Fit {
    Var1Model model;
    bool stationary = true;  // false: Phi-hat fails the stationarity check
    /// Residual cross-correlation matrices at lags 1..L (diagnostic; entries
    /// should be small if VAR(1) fits).
    std::vector<Mat2> residual_autocorr;
};

/// Least-squares VAR(1) fit: mu-hat is the sample mean, Phi-hat = S1 S0^-1
/// from centered lagged cross-products, Sigma_eps-hat from residuals with
/// divisor T-3 (observations used minus parameters per equation).
/// Throws estimation_error on a singular S0 (constant or collinear series).
Var1Fit estimate_var1(const PhaseISeries& series, int min_length = 10,
                      int diagnostic_lags = 4);

}  // namespace rzchart
