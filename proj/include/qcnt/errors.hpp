#pragma once

#include <stdexcept>
#include <string>

namespace qcnt {

/// Invalid user input (bad d, bad flags, domain violations).  CLI exit code 2.
struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Arithmetic misuse (division by zero, pole evaluation).
struct ArithmeticError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A derived computation would need more input range than was provided.
/// Carries what was needed so callers can re-enumerate.  CLI exit code 3.
struct CompletenessError : std::runtime_error {
    double needed_range;
    explicit CompletenessError(const std::string& what, double needed = 0.0)
        : std::runtime_error(what), needed_range(needed) {}
};

/// A boundary membership could not be decided at the maximum working precision.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Enumeration would exceed the configured point cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numeric failure inside an algorithm (quadrature non-convergence,
/// interlacing violation, missing sign change).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qcnt
