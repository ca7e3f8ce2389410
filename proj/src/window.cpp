#include "qcnt/window.hpp"
#include "qcnt/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <sstream>

namespace qcnt {

namespace mp = boost::multiprecision;

namespace {

HighFloat pi_hp() {
    static const HighFloat pi = 4 * atan(HighFloat(1));
    return pi;
}

double theta_power_neg(const QuadraticField& K, const Rational& x) {
    // theta^(-x) for rational x, double precision
    double th = K.embed_value(K.fu);
    return std::exp(-to_double(x) * std::log(th));
}

}  // namespace

double BoundSpec::value(const QuadraticField& K) const {
    double v = to_double(mult);
    if (unit_exp != 0) v *= theta_power_neg(K, unit_exp);
    if (pi_factor) v *= M_PI / 3.0;
    return v;
}

HighFloat BoundSpec::value_hp(const QuadraticField& K) const {
    HighFloat v = to_highfloat(mult);
    if (unit_exp != 0) {
        HighFloat th = K.embed_value_hp(K.fu);
        v *= exp(-to_highfloat(unit_exp) * log(th));
    }
    if (pi_factor) v *= pi_hp() / 3;
    return v;
}

std::string BoundSpec::describe(const QuadraticField& K) const {
    std::ostringstream os;
    os << mult;
    if (unit_exp != 0) os << "*theta^(-" << unit_exp << ")";
    if (pi_factor) os << "*(pi/3)";
    os << " = " << value(K);
    return os.str();
}

bool bound_compare(const QuadraticField& K, const FieldElement& e, const BoundSpec& bound,
                   Rel rel) {
    if (bound.mult <= 0) throw InvalidInputError("window bound must be positive");

    if (bound.is_algebraic()) {
        // |e'| REL m*theta^(-p/q)  <=>  (e'^q * theta^p)^2 REL m^(2q)
        FieldElement c = K.conj(e);
        BigInt p = mp::numerator(bound.unit_exp);
        BigInt q = mp::denominator(bound.unit_exp);
        long pl = p.convert_to<long>(), ql = q.convert_to<long>();
        FieldElement lhs = K.mul(K.pow(c, ql), K.unit_power(pl));
        FieldElement lhs2 = K.mul(lhs, lhs);
        Rational rhs = 1;
        Rational m2 = bound.mult * bound.mult;
        for (long i = 0; i < ql; ++i) rhs *= m2;
        int s = K.compare_rational(lhs2, rhs);
        return rel == Rel::lt ? s < 0 : s <= 0;
    }

    // transcendental bound: double with margin, then 100-digit certified
    double cv = std::abs(K.embed_conj(e));
    double bv = bound.value(K);
    double margin = 1e-9 * std::max(1.0, std::max(cv, bv));
    if (cv < bv - margin) return true;
    if (cv > bv + margin) return false;

    HighFloat chp = abs(K.embed_conj_hp(e));
    HighFloat bhp = bound.value_hp(K);
    HighFloat diff = chp - bhp;
    HighFloat scale = 1 + abs(chp);
    if (abs(diff) < scale * HighFloat("1e-90"))
        throw PrecisionError("window boundary undecidable at working precision");
    return diff < 0;
}

bool Window::contains(const QuadraticField& K, const FieldElement& e) const {
    if (!bound_compare(K, e, outer, outer_rel())) return false;
    if (inner) {
        // annulus: require |e'| > inner, i.e. NOT(|e'| <= inner)
        if (bound_compare(K, e, *inner, Rel::le)) return false;
    }
    return true;
}

Window Window::scaled_by_unit_power(long k) const {
    Window w = *this;
    w.outer.unit_exp += k;
    if (w.inner) w.inner->unit_exp += k;
    return w;
}

}  // namespace qcnt
