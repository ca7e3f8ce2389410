#pragma once

#include "qcnt/field.hpp"

#include <vector>

namespace qcnt {

/// Fractional ideal (rank-2 Z-lattice in K) in Hermite-reduced form:
///   A = (1/den) * ( Z*a  +  Z*(b + c*omega) ),   a, c > 0, 0 <= b < a,
/// so bases are canonical and ideal equality is coordinate equality.
struct IdealBasis {
    BigInt a = 1, b = 0, c = 1, den = 1;

    FieldElement g1() const { return {Rational(a, den), Rational(0)}; }
    FieldElement g2() const { return {Rational(b, den), Rational(c, den)}; }

    bool operator==(const IdealBasis& o) const {
        return a == o.a && b == o.b && c == o.c && den == o.den;
    }
    bool operator!=(const IdealBasis& o) const { return !(*this == o); }
};

/// Hermite reduction of the Z-module spanned by arbitrary field elements.
/// Throws if the span has rank < 2.
IdealBasis ideal_from_generators(const QuadraticField& K, const std::vector<FieldElement>& gens);

IdealBasis ring_of_integers();

IdealBasis principal_ideal(const QuadraticField& K, const FieldElement& gamma);

/// Usual product of fractional ideals via the four generator products.
IdealBasis ideal_product(const QuadraticField& K, const IdealBasis& A, const IdealBasis& B);

IdealBasis ideal_scale(const QuadraticField& K, const IdealBasis& A, const FieldElement& gamma);

/// Trace-dual lattice {beta : Tr(beta * A) in Z}, exact 2x2 solve.
IdealBasis dual_lattice(const QuadraticField& K, const IdealBasis& A);

/// disc(A) = det^2 of the embedding matrix of a basis; exact rational.
/// The lattice covolume in the Minkowski plane is sqrt(|disc(A)|).
Rational ideal_disc(const QuadraticField& K, const IdealBasis& A);

/// Membership alpha in A, exact.
bool ideal_contains(const QuadraticField& K, const IdealBasis& A, const FieldElement& alpha);

}  // namespace qcnt
