#include "qcnt/field.hpp"
#include "qcnt/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <ostream>

namespace qcnt {

namespace mp = boost::multiprecision;

std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
    os << e.a;
    if (e.b != 0) {
        os << (e.b > 0 ? "+" : "") << e.b << "*w";
    }
    return os;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw InvalidInputError("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw InvalidInputError("zero denominator in rational literal");
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac_digits = text.size() - dot - 1;
        bool neg = !digits.empty() && (digits[0] == '-' || digits[0] == '+');
        std::string body = neg ? digits.substr(1) : digits;
        // strip leading zeros: cpp_int would read them as an octal prefix
        size_t nz = body.find_first_not_of('0');
        body = (nz == std::string::npos) ? "0" : body.substr(nz);
        BigInt num(body);
        if (neg && digits[0] == '-') num = -num;
        BigInt den = 1;
        for (size_t i = 0; i < frac_digits; ++i) den *= 10;
        return Rational(num, den);
    }
    return Rational(BigInt(text));
}

BigInt floor_to_integer(const Rational& q) {
    BigInt n = mp::numerator(q), d = mp::denominator(q);
    BigInt quo = n / d;  // truncation
    if (n < 0 && quo * d != n) --quo;
    return quo;
}

BigInt round_to_integer(const Rational& q) {
    return floor_to_integer(q + Rational(1, 2));
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw InvalidInputError("non-finite double");
    if (x == 0.0) return Rational(0);
    int exp2 = 0;
    double m = std::frexp(x, &exp2);
    auto mant = static_cast<long long>(std::ldexp(m, 53));
    exp2 -= 53;
    Rational r(mant);
    if (exp2 >= 0)
        r *= Rational(BigInt(1) << exp2);
    else
        r /= Rational(BigInt(1) << -exp2);
    return r;
}

bool is_squarefree(long d) {
    if (d < 1) return false;
    long n = d;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

FieldElement QuadraticField::add(const FieldElement& x, const FieldElement& y) const {
    return {x.a + y.a, x.b + y.b};
}

FieldElement QuadraticField::sub(const FieldElement& x, const FieldElement& y) const {
    return {x.a - y.a, x.b - y.b};
}

FieldElement QuadraticField::neg(const FieldElement& x) const { return {-x.a, -x.b}; }

FieldElement QuadraticField::mul(const FieldElement& x, const FieldElement& y) const {
    // omega^2 = d                (omega = sqrt d)
    // omega^2 = omega + (d-1)/4  (omega = (1+sqrt d)/2)
    Rational cross = x.a * y.b + x.b * y.a;
    Rational bb = x.b * y.b;
    if (!omega_is_half) return {x.a * y.a + bb * d, cross};
    return {x.a * y.a + bb * ((d - 1) / 4), cross + bb};
}

FieldElement QuadraticField::mul_rational(const FieldElement& x, const Rational& q) const {
    return {x.a * q, x.b * q};
}

FieldElement QuadraticField::conj(const FieldElement& x) const {
    // sqrt(d) -> -sqrt(d);  (1+sqrt d)/2 -> 1 - omega
    if (!omega_is_half) return {x.a, -x.b};
    return {x.a + x.b, -x.b};
}

Rational QuadraticField::norm(const FieldElement& x) const {
    // N(x) = x * conj(x), exact rational
    if (!omega_is_half) return x.a * x.a - x.b * x.b * d;
    return x.a * x.a + x.a * x.b - x.b * x.b * ((d - 1) / 4);
}

Rational QuadraticField::trace(const FieldElement& x) const {
    if (!omega_is_half) return 2 * x.a;
    return 2 * x.a + x.b;
}

FieldElement QuadraticField::inverse(const FieldElement& x) const {
    Rational n = norm(x);
    if (n == 0) throw ArithmeticError("division by zero field element");
    FieldElement c = conj(x);
    return {c.a / n, c.b / n};
}

FieldElement QuadraticField::div(const FieldElement& x, const FieldElement& y) const {
    return mul(x, inverse(y));
}

FieldElement QuadraticField::pow(const FieldElement& x, long k) const {
    if (k < 0) return pow(inverse(x), -k);
    FieldElement result = one();
    FieldElement base = x;
    unsigned long e = static_cast<unsigned long>(k);
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FieldElement QuadraticField::unit_power(long k) const { return pow(fu, k); }

std::pair<Rational, Rational> QuadraticField::sqrt_coords(const FieldElement& x) const {
    if (!omega_is_half) return {x.a, x.b};
    return {x.a + x.b / 2, x.b / 2};
}

int QuadraticField::sign(const FieldElement& x) const {
    auto [p, q] = sqrt_coords(x);  // sigma1(x) = p + q*sqrt(d)
    int sp = p.sign(), sq = q.sign();
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // opposite signs: compare p^2 against q^2 d
    Rational lhs = p * p, rhs = q * q * d;
    if (lhs == rhs) return 0;  // impossible for d squarefree >= 2 and q != 0, kept for safety
    bool p_dominates = lhs > rhs;
    return p_dominates ? sp : sq;
}

int QuadraticField::compare(const FieldElement& x, const FieldElement& y) const {
    return sign(sub(x, y));
}

int QuadraticField::compare_rational(const FieldElement& x, const Rational& q) const {
    return sign(sub(x, from_rational(q)));
}

std::pair<double, double> QuadraticField::embed(const FieldElement& x) const {
    double a = to_double(x.a), b = to_double(x.b);
    return {a + b * omega_value_, a + b * omega_conj_};
}

double QuadraticField::embed_value(const FieldElement& x) const {
    return to_double(x.a) + to_double(x.b) * omega_value_;
}

double QuadraticField::embed_conj(const FieldElement& x) const {
    return to_double(x.a) + to_double(x.b) * omega_conj_;
}

HighFloat QuadraticField::embed_value_hp(const FieldElement& x) const {
    HighFloat r = sqrt(HighFloat(d));
    HighFloat w = omega_is_half ? (1 + r) / 2 : r;
    return to_highfloat(x.a) + to_highfloat(x.b) * w;
}

HighFloat QuadraticField::embed_conj_hp(const FieldElement& x) const {
    HighFloat r = sqrt(HighFloat(d));
    HighFloat w = omega_is_half ? (1 - r) / 2 : -r;
    return to_highfloat(x.a) + to_highfloat(x.b) * w;
}

QuadraticField make_field(long d) {
    if (d < 2) throw InvalidInputError("d must be >= 2");
    if (!is_squarefree(d)) throw InvalidInputError("d must be squarefree");

    QuadraticField K;
    K.d = d;
    K.omega_is_half = (d % 4 == 1);
    K.disc = K.omega_is_half ? BigInt(d) : BigInt(4) * d;

    double rd = std::sqrt(static_cast<double>(d));
    K.omega_value_ = K.omega_is_half ? (1.0 + rd) / 2.0 : rd;
    K.omega_conj_ = K.omega_is_half ? (1.0 - rd) / 2.0 : -rd;

    // Fundamental unit: continued fraction of the reduced irrational
    // alpha0 = omega + k, k = floor(|omega'|), written (P + sqrt(d))/Q.
    long isq = static_cast<long>(std::floor(std::sqrt(static_cast<double>(d))));
    while (static_cast<long long>(isq + 1) * (isq + 1) <= d) ++isq;
    while (static_cast<long long>(isq) * isq > d) --isq;

    BigInt P0, Q0;
    long shift;  // alpha0 = omega + shift
    if (!K.omega_is_half) {
        shift = isq;
        P0 = isq;
        Q0 = 1;
    } else {
        shift = (isq - 1) / 2;  // floor((sqrt d - 1)/2)
        P0 = 2 * shift + 1;
        Q0 = 2;
    }

    BigInt P = P0, Q = Q0;
    BigInt p_prev = 0, p_cur = 1;  // p_{-2}, p_{-1}
    BigInt q_prev = 1, q_cur = 0;  // q_{-2}, q_{-1}
    BigInt N = d;
    long period = 0;
    for (;;) {
        BigInt a = (P + isq) / Q;
        BigInt p_next = a * p_cur + p_prev;
        BigInt q_next = a * q_cur + q_prev;
        p_prev = p_cur; p_cur = p_next;
        q_prev = q_cur; q_cur = q_next;
        P = a * Q - P;
        Q = (N - P * P) / Q;
        ++period;
        if (P == P0 && Q == Q0) break;
        if (period > 100000) throw NumericError("continued fraction period overflow");
    }

    // unit = q_{l-1} * alpha0 + q_{l-2} with alpha0 = omega + shift
    Rational qc(q_cur), qp(q_prev);
    K.fu = FieldElement(qc * shift + qp, qc);

    Rational nrm = K.norm(K.fu);
    if (nrm != 1 && nrm != -1)
        throw NumericError("fundamental unit computation failed: |norm| != 1");
    K.fu_norm = (nrm == 1) ? 1 : -1;
    if (K.sign(K.sub(K.fu, K.one())) <= 0)
        throw NumericError("fundamental unit computation failed: theta <= 1");

    // [O_K : Z[theta]] = |b| for theta = a + b*omega
    K.zt_equals_ok =
        (boost::multiprecision::denominator(K.fu.b) == 1) &&
        (boost::multiprecision::numerator(K.fu.b) == 1 ||
         boost::multiprecision::numerator(K.fu.b) == -1);
    return K;
}

}  // namespace qcnt
