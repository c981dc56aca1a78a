#pragma once

#include <stdexcept>
#include <string>

namespace rzchart {

/// Invalid parameter value (bad probability, n < 1, ...). CLI maps this to
/// exit code 2.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical-domain failure (non-stationary Phi, quantile approximation out
/// of range, singular estimation system, ...). CLI maps this to exit code 3.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class stationarity_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

class estimation_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

}  // namespace rzchart
