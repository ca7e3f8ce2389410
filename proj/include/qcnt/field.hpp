#pragma once

#include "qcnt/numeric.hpp"

#include <iosfwd>
#include <utility>

namespace qcnt {

/// Element a + b*omega of a real quadratic field, coordinates on the integral
/// basis {1, omega} of O_K.  Plain value type; the algebra lives on
/// QuadraticField so elements stay two rationals wide.
struct FieldElement {
    Rational a;
    Rational b;

    FieldElement() = default;
    FieldElement(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
    explicit FieldElement(long n) : a(n), b(0) {}

    bool operator==(const FieldElement& o) const { return a == o.a && b == o.b; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    bool is_integral() const {
        return boost::multiprecision::denominator(a) == 1 &&
               boost::multiprecision::denominator(b) == 1;
    }
};

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

/// Real quadratic field K = Q(sqrt(d)), d squarefree >= 2, with its ring of
/// integers Z[omega], both real embeddings, and the fundamental unit theta > 1.
///
/// omega = sqrt(d) when d = 2,3 mod 4 (disc = 4d), omega = (1+sqrt(d))/2 when
/// d = 1 mod 4 (disc = d).  theta is a PV unit: theta > 1, |theta'| < 1.
class QuadraticField {
public:
    long d = 0;
    bool omega_is_half = false;  // omega = (1+sqrt d)/2 when true
    BigInt disc;
    FieldElement fu;       // fundamental unit theta > 1
    int fu_norm = 0;       // N(theta), +1 or -1
    bool zt_equals_ok = false;  // Z[theta] == O_K

    // -- arithmetic (exact) --
    FieldElement add(const FieldElement& x, const FieldElement& y) const;
    FieldElement sub(const FieldElement& x, const FieldElement& y) const;
    FieldElement neg(const FieldElement& x) const;
    FieldElement mul(const FieldElement& x, const FieldElement& y) const;
    FieldElement mul_rational(const FieldElement& x, const Rational& q) const;
    FieldElement div(const FieldElement& x, const FieldElement& y) const;
    FieldElement conj(const FieldElement& x) const;
    Rational norm(const FieldElement& x) const;
    Rational trace(const FieldElement& x) const;
    FieldElement pow(const FieldElement& x, long k) const;  // k may be negative for units
    FieldElement inverse(const FieldElement& x) const;

    /// theta^k as an exact element (negative k uses the unit inverse).
    FieldElement unit_power(long k) const;

    // -- embeddings --
    /// (sigma1(x), sigma2(x)) in double precision; sign decisions near zero
    /// are delegated to sign() which is exact.
    std::pair<double, double> embed(const FieldElement& x) const;
    double embed_value(const FieldElement& x) const;   // sigma1
    double embed_conj(const FieldElement& x) const;    // sigma2
    HighFloat embed_value_hp(const FieldElement& x) const;
    HighFloat embed_conj_hp(const FieldElement& x) const;

    /// Exact sign of sigma1(x): -1, 0, +1.  Never uses floating point.
    int sign(const FieldElement& x) const;
    /// Exact sign of sigma1(x) - sigma1(y).
    int compare(const FieldElement& x, const FieldElement& y) const;
    /// Exact sign of sigma1(x) - q.
    int compare_rational(const FieldElement& x, const Rational& q) const;

    FieldElement omega() const { return FieldElement(Rational(0), Rational(1)); }
    FieldElement one() const { return FieldElement(1); }
    FieldElement from_rational(const Rational& q) const { return FieldElement(q, Rational(0)); }

    /// Coordinates (p, q) with sigma1(x) = p + q*sqrt(d); used by sign logic
    /// and by callers that need the sqrt(d) representation.
    std::pair<Rational, Rational> sqrt_coords(const FieldElement& x) const;

private:
    double omega_value_ = 0.0;
    double omega_conj_ = 0.0;
    friend QuadraticField make_field(long d);
};

/// Construct Q(sqrt(d)) for squarefree d >= 2.  The fundamental unit is found
/// by the continued-fraction expansion of the reduced quadratic irrational
/// omega + floor(-omega'): one full period yields the automorph q_{l-1}*alpha
/// + q_{l-2}, the smallest unit > 1 of Z[omega].
QuadraticField make_field(long d);

bool is_squarefree(long d);

}  // namespace qcnt
