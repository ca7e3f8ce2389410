#pragma once

#include <functional>

namespace qcnt {

/// Adaptive composite Gauss-Legendre (15-point, bisection refinement) on
/// [a, b].  Throws NumericError if the tolerance cannot be reached.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-13, double rel_tol = 1e-12);

/// Integral over [a, infinity) for integrands decaying at least like the
/// caller-chosen cutoff suggests: dyadic panels until the panel contribution
/// drops below abs_tol, capped at t_max.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double t_max, double abs_tol = 1e-14);

}  // namespace qcnt
