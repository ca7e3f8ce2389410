#include "qcnt/modular.hpp"
#include "qcnt/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcnt {

namespace mp = boost::multiprecision;

JInvariant j_invariant(const PointCloud& cloud, JPrefactor pref) {
    EvalResult z6 = zeta_direct(cloud, Complex(6, 0));
    EvalResult z4 = zeta_direct(cloud, Complex(4, 0));
    double a6 = z6.value.real(), a4 = z4.value.real();
    if (a4 <= 0) throw NumericError("zeta(4) must be positive for the j-invariant");
    JInvariant inv;
    inv.J = a6 * a6 / (a4 * a4 * a4);
    inv.J_bound = inv.J * (2 * z6.error_bound / std::max(a6, 1e-300) +
                           3 * z4.error_bound / a4);
    double denom = 1.0 - (49.0 / 40.0) * inv.J;
    double denom_tol = (49.0 / 40.0) * inv.J_bound + 1e-12;
    double prefactor = pref == JPrefactor::cube ? 12.0 * 12.0 * 12.0 : 12.0;
    if (std::abs(denom) <= denom_tol) {
        inv.j_infinite = true;
        inv.j = std::copysign(std::numeric_limits<double>::infinity(), denom);
    } else {
        inv.j = prefactor / denom;
    }
    return inv;
}

std::vector<long> lambda_eps(double theta, double eps, long n_max) {
    if (!(eps > 0) || eps >= 0.5)
        throw InvalidInputError("lambda_eps requires 0 < eps < 1/2");
    if (n_max < 1) throw InvalidInputError("n_max must be positive");
    std::vector<long> out;
    HighFloat theta_hp(theta), eps_hp(eps);
    for (long n = 1; n <= n_max; ++n) {
        double frac = std::abs(n * theta - std::llround(n * theta));
        double margin = 1e-9 + 1e-15 * n;
        if (frac < eps - margin) {
            out.push_back(n);
        } else if (frac <= eps + margin) {
            // escalate: theta and eps are exact binary doubles
            HighFloat prod = n * theta_hp;
            HighFloat f = abs(prod - floor(prod + HighFloat(0.5)));
            HighFloat diff = f - eps_hp;
            if (abs(diff) < HighFloat("1e-40"))
                throw PrecisionError("||n theta|| - eps undecidable at working precision");
            if (diff < 0) out.push_back(n);
        }
    }
    return out;
}

namespace {

/// exact decision |sigma1(e)| < theta^(-p/q); strict comparison
bool value_below_unit_power(const QuadraticField& K, const FieldElement& e, const Rational& x) {
    BigInt p = mp::numerator(x), q = mp::denominator(x);
    long pl = p.convert_to<long>(), ql = q.convert_to<long>();
    FieldElement F = K.mul(K.pow(e, ql), K.unit_power(pl));
    FieldElement F2 = K.mul(F, F);
    return K.compare_rational(F2, Rational(1)) < 0;
}

}  // namespace

std::vector<long> lambda_eps_exact(const QuadraticField& K, const Rational& x, long n_max) {
    if (n_max < 1) throw InvalidInputError("n_max must be positive");
    if (x <= 0) throw InvalidInputError("eps = theta^(-x) needs x > 0 to stay below 1/2");
    std::vector<long> out;
    double tv = K.embed_value(K.fu);
    double eps = std::exp(-to_double(x) * std::log(tv));
    if (eps >= 0.5) throw InvalidInputError("eps = theta^(-x) >= 1/2 is degenerate");
    for (long n = 1; n <= n_max; ++n) {
        double fr = n * tv - std::llround(n * tv);
        double margin = 1e-9 + 1e-15 * std::abs(n * tv);
        if (std::abs(fr) > eps + margin) continue;
        long r = std::llround(n * tv);
        FieldElement e = K.sub(K.mul_rational(K.fu, Rational(n)), K.from_rational(Rational(r)));
        if (std::abs(fr) < eps - margin || value_below_unit_power(K, e, x)) out.push_back(n);
    }
    return out;
}

namespace {

JInvariant j_from_integer_set(const std::vector<long>& lambda, long n_max, JPrefactor pref,
                              double* zeta4_out, double* zeta6_out) {
    KahanSum s4, s6;
    for (long n : lambda) {
        double inv = 1.0 / static_cast<double>(n);
        double n4 = inv * inv * inv * inv;
        s4.add(n4);
        s6.add(n4 * inv * inv);
    }
    double z4 = s4.value(), z6 = s6.value();
    if (zeta4_out) *zeta4_out = z4;
    if (zeta6_out) *zeta6_out = z6;
    JInvariant inv;
    if (z4 <= 0) {
        // empty approximation set: zeta = 0, J = 0, j = prefactor
        inv.J = 0;
        inv.j = pref == JPrefactor::cube ? 12.0 * 12.0 * 12.0 : 12.0;
        return inv;
    }
    // rigorous all-integers tail bound
    double t4 = std::pow(static_cast<double>(n_max), -3.0) / 3.0;
    double t6 = std::pow(static_cast<double>(n_max), -5.0) / 5.0;
    inv.J = z6 * z6 / (z4 * z4 * z4);
    inv.J_bound = inv.J * (2 * t6 / z6 + 3 * t4 / z4);
    double denom = 1.0 - (49.0 / 40.0) * inv.J;
    double prefactor = pref == JPrefactor::cube ? 12.0 * 12.0 * 12.0 : 12.0;
    if (std::abs(denom) <= (49.0 / 40.0) * inv.J_bound + 1e-12) {
        inv.j_infinite = true;
        inv.j = std::copysign(std::numeric_limits<double>::infinity(), denom);
    } else {
        inv.j = prefactor / denom;
    }
    return inv;
}

}  // namespace

QuantumJStep j_eps(const QuadraticField& K, const Rational& x, long n_max, JPrefactor pref) {
    QuantumJStep step;
    step.eps_exponent = x;
    double tv = K.embed_value(K.fu);
    step.eps = std::exp(-to_double(x) * std::log(tv));
    std::vector<long> lam = lambda_eps_exact(K, x, n_max);
    step.lambda_count = lam.size();
    // completeness of the s = 4 tail: rigorous n_max^-3/3 over all integers
    double needed = std::ceil(std::pow(3e-10, -1.0 / 3.0));
    if (std::pow(static_cast<double>(n_max), -3.0) / 3.0 > 1e-10)
        throw CompletenessError("n_max too small for the s=4 tail target", needed);
    step.inv = j_from_integer_set(lam, n_max, pref, &step.zeta4, &step.zeta6);
    return step;
}

namespace {

// Lambda_eps with the degenerate eps >= 1/2 case folded in: every n then
// satisfies ||n theta|| < eps, so the set is all of [1, n_max]
std::vector<long> lambda_or_all(const QuadraticField& K, const Rational& x, long n_max) {
    double tv = K.embed_value(K.fu);
    double eps = std::exp(-to_double(x) * std::log(tv));
    if (eps >= 0.5) {
        std::vector<long> all(n_max);
        for (long n = 1; n <= n_max; ++n) all[n - 1] = n;
        return all;
    }
    return lambda_eps_exact(K, x, n_max);
}

}  // namespace

std::vector<double> pink_scaled_set(const QuadraticField& K, const Rational& x, long m,
                                    double range) {
    double tv = K.embed_value(K.fu);
    double delta = tv - K.embed_conj(K.fu);  // theta - theta'
    double scale = delta / std::pow(tv, static_cast<double>(m));
    long n_max = static_cast<long>(std::ceil(range / scale)) + 2;
    std::vector<long> lam = lambda_or_all(K, x + m, n_max);
    std::vector<double> out;
    out.reserve(lam.size());
    for (long n : lam) {
        double v = scale * n;
        if (v <= range) out.push_back(v);
    }
    return out;
}

namespace {

// one-sided sup over a of min distance to b, restricted to [lo, hi]
double one_sided_hausdorff(const std::vector<double>& a, const std::vector<double>& b,
                           double lo, double hi) {
    if (b.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0;
    size_t j = 0;
    for (double v : a) {
        if (v < lo || v > hi) continue;
        while (j + 1 < b.size() && b[j + 1] < v) ++j;
        double best = std::numeric_limits<double>::infinity();
        for (size_t k = j; k < std::min(b.size(), j + 3); ++k)
            best = std::min(best, std::abs(b[k] - v));
        if (j > 0) best = std::min(best, std::abs(b[j - 1] - v));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

PinkReport pink_set_check(const QuadraticField& K, const Rational& x, long m_min, long m_max,
                          double range) {
    if (x < 0 || x >= 1) throw InvalidInputError("pink checks require x in [0, 1)");
    if (!K.zt_equals_ok)
        throw InvalidInputError("pink checks require Z[theta] = O_K");
    PinkReport rep;
    rep.x = x;
    rep.range = range;

    ModelSetSpec target = ModelSetSpec::unit_power_ideal(K.d, x, /*strict=*/true);
    PointCloud cloud = enumerate_modelset(K, target, range);
    rep.target_count = cloud.size();
    std::vector<double> tgt;
    tgt.reserve(cloud.size());
    for (const auto& p : cloud.pts) tgt.push_back(p.value);
    rep.edge_buffer = 2 * cloud.gap_max;

    double lo = rep.edge_buffer, hi = range - rep.edge_buffer;
    for (long m = m_min; m <= m_max; ++m) {
        std::vector<double> scaled = pink_scaled_set(K, x, m, range);
        double d1 = one_sided_hausdorff(scaled, tgt, lo, hi);
        double d2 = one_sided_hausdorff(tgt, scaled, lo, hi);
        rep.m_values.push_back(m);
        rep.hausdorff.push_back(std::max(d1, d2));
        rep.scaled_counts.push_back(scaled.size());
    }
    for (size_t i = 1; i < rep.hausdorff.size(); ++i)
        rep.decay_ratios.push_back(rep.hausdorff[i] / rep.hausdorff[i - 1]);
    return rep;
}

PinkReport pink_value_check(const QuadraticField& K, const Rational& x, long m_max, long n_max) {
    if (x < 0 || x >= 1) throw InvalidInputError("pink checks require x in [0, 1)");
    PinkReport rep;
    rep.x = x;

    // J(a_x) target: direct zetas on a rigorous-bound truncation
    double cutoff = 1500;
    ModelSetSpec strict_spec = ModelSetSpec::unit_power_ideal(K.d, x, true);
    PointCloud cloud = enumerate_modelset(K, strict_spec, cutoff);
    rep.J_target = j_invariant(cloud).J;

    // theta^x in O_K iff x is an integer; then a_x and a_x+ differ
    if (mp::denominator(x) == 1) {
        ModelSetSpec closed_spec = ModelSetSpec::unit_power_ideal(K.d, x, false);
        PointCloud closed_cloud = enumerate_modelset(K, closed_spec, cutoff);
        rep.J_target_closed = j_invariant(closed_cloud).J;
    }

    double tv = K.embed_value(K.fu);
    for (long m = 1; m <= m_max; ++m) {
        // skip degenerate steps where eps = theta^-(x+m) >= 1/2
        if (std::exp(-to_double(x + m) * std::log(tv)) >= 0.5) continue;
        QuantumJStep st = j_eps(K, x + m, n_max);
        rep.m_values.push_back(m);
        rep.J_eps.push_back(st.inv.J);
        rep.value_gaps.push_back(std::abs(st.inv.J - rep.J_target));
    }
    return rep;
}

}  // namespace qcnt
