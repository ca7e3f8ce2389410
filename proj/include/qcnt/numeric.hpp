#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>
#include <cstdint>
#include <string>

namespace qcnt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// High-precision float for window decisions against transcendental bounds
/// (pi/3 dual windows) and for frozen-constant generation.  ~100 decimal digits.
using HighFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>>;

using Complex = std::complex<double>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }
inline HighFloat to_highfloat(const Rational& q) { return HighFloat(q); }

inline int sign_of(const Rational& q) { return q.sign(); }
inline int sign_of(const BigInt& n) { return n.sign(); }

/// Parse "p/q", integer, or decimal ("0.25") strings into an exact rational.
Rational parse_rational(const std::string& text);

/// Round to nearest integer (ties toward +inf; exact).
BigInt round_to_integer(const Rational& q);

BigInt floor_to_integer(const Rational& q);

/// Exact rational value of a finite double (binary expansion is exact).
Rational rational_from_double(double x);

/// Neumaier compensated accumulator: deterministic, order-sensitive.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double term) {
        double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct ComplexKahanSum {
    KahanSum re, im;
    void add(Complex z) { re.add(z.real()); im.add(z.imag()); }
    Complex value() const { return {re.value(), im.value()}; }
};

}  // namespace qcnt
