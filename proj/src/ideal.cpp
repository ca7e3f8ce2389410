#include "qcnt/ideal.hpp"
#include "qcnt/errors.hpp"

#include <boost/multiprecision/integer.hpp>

namespace qcnt {

namespace mp = boost::multiprecision;

namespace {

BigInt positive_mod(const BigInt& x, const BigInt& m) {
    BigInt r = x % m;
    if (r < 0) r += m;
    return r;
}

// extended gcd: returns g = gcd(x, y) and u, v with u*x + v*y = g
BigInt ext_gcd(const BigInt& x, const BigInt& y, BigInt& u, BigInt& v) {
    if (y == 0) {
        u = (x < 0) ? -1 : 1;
        v = 0;
        return mp::abs(x);
    }
    BigInt u1, v1;
    BigInt g = ext_gcd(y, x % y, u1, v1);
    u = v1;
    v = u1 - (x / y) * v1;
    return g;
}

}  // namespace

IdealBasis ideal_from_generators(const QuadraticField& K,
                                 const std::vector<FieldElement>& gens) {
    (void)K;
    // common denominator
    BigInt den = 1;
    for (const auto& g : gens) {
        den = mp::lcm(den, mp::denominator(g.a));
        den = mp::lcm(den, mp::denominator(g.b));
    }
    // integer coordinate vectors (x, y): element = (x + y*omega)/den
    std::vector<std::pair<BigInt, BigInt>> vecs;
    for (const auto& g : gens) {
        BigInt x = mp::numerator(g.a) * (den / mp::denominator(g.a));
        BigInt y = mp::numerator(g.b) * (den / mp::denominator(g.b));
        if (x != 0 || y != 0) vecs.emplace_back(x, y);
    }
    // combine to a single vector (wx, c) with minimal positive omega-part c
    BigInt c = 0, wx = 0;
    for (const auto& [x, y] : vecs) {
        if (y == 0) continue;
        if (c == 0) {
            c = mp::abs(y);
            wx = (y < 0) ? -x : x;
        } else {
            BigInt u, v;
            BigInt g = ext_gcd(c, y, u, v);
            wx = u * wx + v * x;
            c = g;
        }
    }
    if (c == 0) throw InvalidInputError("generators span a rank-<2 module (no omega component)");
    // eliminate omega-parts, collect pure-rational x parts
    BigInt a = 0;
    for (const auto& [x, y] : vecs) {
        BigInt x_red = x - (y / c) * wx;
        if (y % c != 0) throw NumericError("HNF reduction invariant violated");
        a = mp::gcd(a, x_red);
    }
    if (a == 0) throw InvalidInputError("generators span a rank-<2 module (no rational component)");

    IdealBasis A;
    A.den = den;
    A.a = a;
    A.c = c;
    A.b = positive_mod(wx, a);
    // normalize the denominator
    BigInt g = mp::gcd(mp::gcd(A.a, A.b), mp::gcd(A.c, A.den));
    A.a /= g; A.b /= g; A.c /= g; A.den /= g;
    return A;
}

IdealBasis ring_of_integers() { return IdealBasis{}; }

IdealBasis principal_ideal(const QuadraticField& K, const FieldElement& gamma) {
    if (gamma.is_zero()) throw InvalidInputError("principal ideal of zero");
    return ideal_from_generators(K, {gamma, K.mul(gamma, K.omega())});
}

IdealBasis ideal_product(const QuadraticField& K, const IdealBasis& A, const IdealBasis& B) {
    std::vector<FieldElement> gens;
    for (const auto& g : {A.g1(), A.g2()})
        for (const auto& h : {B.g1(), B.g2()}) gens.push_back(K.mul(g, h));
    return ideal_from_generators(K, gens);
}

IdealBasis ideal_scale(const QuadraticField& K, const IdealBasis& A, const FieldElement& gamma) {
    if (gamma.is_zero()) throw InvalidInputError("scaling ideal by zero");
    return ideal_from_generators(K, {K.mul(A.g1(), gamma), K.mul(A.g2(), gamma)});
}

IdealBasis dual_lattice(const QuadraticField& K, const IdealBasis& A) {
    // Solve Tr(h_i g_j) = delta_ij for h_i = x + y*omega:
    //   Tr(h*g) = x*Tr(g) + y*Tr(omega*g)
    FieldElement g1 = A.g1(), g2 = A.g2();
    Rational t11 = K.trace(g1), t12 = K.trace(K.mul(K.omega(), g1));
    Rational t21 = K.trace(g2), t22 = K.trace(K.mul(K.omega(), g2));
    Rational det = t11 * t22 - t12 * t21;
    if (det == 0) throw NumericError("singular trace Gram matrix for ideal basis");
    // h1: rhs (1, 0); h2: rhs (0, 1)
    FieldElement h1{t22 / det, -t21 / det};
    FieldElement h2{-t12 / det, t11 / det};
    return ideal_from_generators(K, {h1, h2});
}

Rational ideal_disc(const QuadraticField& K, const IdealBasis& A) {
    // D = g1*conj(g2) - g2*conj(g1) has trace 0; sigma1(D)^2 = D^2 is rational.
    FieldElement D = K.sub(K.mul(A.g1(), K.conj(A.g2())), K.mul(A.g2(), K.conj(A.g1())));
    FieldElement D2 = K.mul(D, D);
    if (D2.b != 0) throw NumericError("ideal discriminant is not rational");
    return D2.a;
}

bool ideal_contains(const QuadraticField& K, const IdealBasis& A, const FieldElement& alpha) {
    (void)K;
    // alpha = (x + y*omega)/den(alpha); solve m*a + n*b = x', n*c = y' over Z
    Rational xa = alpha.a * A.den, yb = alpha.b * A.den;
    if (mp::denominator(xa) != 1 || mp::denominator(yb) != 1) return false;
    BigInt x = mp::numerator(xa), y = mp::numerator(yb);
    if (y % A.c != 0) return false;
    BigInt n = y / A.c;
    BigInt rem = x - n * A.b;
    return rem % A.a == 0;
}

}  // namespace qcnt
