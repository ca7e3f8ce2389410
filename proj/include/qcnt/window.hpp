#pragma once

#include "qcnt/field.hpp"

#include <optional>
#include <string>

namespace qcnt {

/// Internal-space bound  mult * theta^(-unit_exp) * (pi/3 if pi_factor).
///
/// All windows used by the toolkit have this shape: plain radii (mult, exp 0),
/// unit powers theta^-x with rational x, sums of unit powers (sumsets), and
/// the pi/3-scaled polar duals.  Algebraic bounds (pi_factor == false) admit
/// exact membership decisions; pi/3 bounds are decided by certified
/// high-precision evaluation.
struct BoundSpec {
    Rational mult = 1;
    Rational unit_exp = 0;
    bool pi_factor = false;

    bool is_algebraic() const { return !pi_factor; }
    double value(const QuadraticField& K) const;
    HighFloat value_hp(const QuadraticField& K) const;
    std::string describe(const QuadraticField& K) const;
};

/// |y| compared against a bound: strict "<" or closed "<=".
enum class Rel { lt, le };

/// Exact (or certified) decision of  |sigma2(e)| REL bound.
/// Algebraic path: raise both sides to the denominator power of unit_exp and
/// compare squares over Q(sqrt d).  Transcendental path: double with margin,
/// then 100-digit floats; throws PrecisionError if still inseparable.
bool bound_compare(const QuadraticField& K, const FieldElement& e, const BoundSpec& bound,
                   Rel rel);

/// Interval (default) or annulus window on the internal coordinate.
/// Annulus membership: inner < |y| REL_outer outer  (shells of dual model sets).
struct Window {
    BoundSpec outer;
    bool strict = false;  // strict |.| < w (a_x) vs closed |.| <= w (a_x^+)
    std::optional<BoundSpec> inner;

    Rel outer_rel() const { return strict ? Rel::lt : Rel::le; }
    bool contains(const QuadraticField& K, const FieldElement& e) const;

    /// Scale the window radius by |sigma2(theta)|^k = theta^-k (exact).
    Window scaled_by_unit_power(long k) const;
};

}  // namespace qcnt
