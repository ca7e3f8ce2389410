#include "qcnt/modelset.hpp"
#include "qcnt/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <ostream>

namespace qcnt {

namespace mp = boost::multiprecision;

ModelSetSpec ModelSetSpec::lattice(Rational spacing) {
    if (spacing <= 0) throw InvalidInputError("lattice spacing must be positive");
    ModelSetSpec s;
    s.lattice_mode = true;
    s.xi = std::move(spacing);
    return s;
}

ModelSetSpec ModelSetSpec::unit_power_ideal(long d, const Rational& x, bool strict) {
    ModelSetSpec s;
    s.d = d;
    s.ideal = ring_of_integers();
    s.window.outer = BoundSpec{1, x, false};
    s.window.strict = strict;
    return s;
}

double PointCloud::min_positive() const {
    for (const auto& p : pts)
        if (p.value > 0) return p.value;
    throw CompletenessError("cloud has no positive points");
}

namespace {

void compute_stats(PointCloud& cloud) {
    auto& pts = cloud.pts;
    if (pts.size() >= 2) {
        double rmin = std::numeric_limits<double>::infinity(), gmax = 0;
        for (size_t i = 1; i < pts.size(); ++i) {
            double g = pts[i].value - pts[i - 1].value;
            rmin = std::min(rmin, g);
            gmax = std::max(gmax, g);
        }
        cloud.r_min = rmin;
        cloud.gap_max = gmax;
    } else {
        cloud.r_min = 0;
        cloud.gap_max = 0;
    }
    double length = cloud.signed_range ? 2 * cloud.range_max : cloud.range_max;
    cloud.density_est = length > 0 ? static_cast<double>(pts.size()) / length : 0;
}

PointCloud enumerate_lattice(const ModelSetSpec& spec, double range_max, bool signed_range,
                             const EnumerateOptions& opts) {
    double xi = to_double(spec.xi);
    long k_max = static_cast<long>(std::floor(range_max / xi + 1e-12));
    std::uint64_t count = signed_range ? 2 * k_max + 1 : k_max;
    if (count > opts.point_cap)
        throw ResourceError("lattice enumeration exceeds point cap");
    PointCloud cloud;
    cloud.spec = spec;
    cloud.range_max = range_max;
    cloud.signed_range = signed_range;
    cloud.pts.reserve(count);
    long k_lo = signed_range ? -k_max : 1;
    for (long k = k_lo; k <= k_max; ++k) {
        Point p;
        p.el = FieldElement(spec.xi * k, Rational(0));
        p.value = xi * k;
        p.conj_value = 0.0;  // lattice mode has trivial internal space
        cloud.pts.push_back(std::move(p));
    }
    compute_stats(cloud);
    cloud.exact_density = 1.0 / xi;
    return cloud;
}

}  // namespace

PointCloud enumerate_modelset(const QuadraticField& K, const ModelSetSpec& spec,
                              double range_max, bool signed_range,
                              const EnumerateOptions& opts) {
    if (range_max <= 0) throw InvalidInputError("range_max must be positive");
    if (spec.lattice_mode) return enumerate_lattice(spec, range_max, signed_range, opts);

    if (K.sign(spec.scale) == 0) throw InvalidInputError("zero scale in model set spec");
    // canonicalize gamma to positive embedding (model sets are symmetric)
    FieldElement gamma = K.sign(spec.scale) > 0 ? spec.scale : K.neg(spec.scale);
    double gv = K.embed_value(gamma);

    // enumerate base points alpha in A with sigma1 in the (scaled) physical
    // range and sigma2 in the window, then multiply by gamma
    double base_range = range_max / gv;

    FieldElement g1 = spec.ideal.g1(), g2 = spec.ideal.g2();
    auto [x1, y1] = K.embed(g1);
    auto [x2, y2] = K.embed(g2);
    // HNF guarantees g1 rational positive
    if (x1 <= 0 || std::abs(x1 - y1) > 1e-12 * std::abs(x1))
        throw NumericError("ideal basis not in expected HNF form");

    double W = spec.window.outer.value(K) * (1 + 1e-12) + 1e-12;

    // crude count estimate against the cap: box area / covolume
    double covol = std::sqrt(std::abs(to_double(ideal_disc(K, spec.ideal))));
    double est = (signed_range ? 2 * base_range : base_range) * 2 * W / covol;
    if (est > static_cast<double>(opts.point_cap))
        throw ResourceError("window/range imply too many points (cap exceeded)");

    double v_lo = signed_range ? -base_range : 0.0;
    double v_hi = base_range;

    // n-range from the inverse of [v; c] = [[x1 x2],[y1 y2]] [m; n]
    double det = x1 * y2 - x2 * y1;
    double n_bound = 0;
    for (double v : {v_lo, v_hi})
        for (double c : {-W, W}) {
            double n = (-y1 * v + x1 * c) / det;
            n_bound = std::max(n_bound, std::abs(n));
        }
    long n_min = static_cast<long>(-std::floor(n_bound)) - 2;
    long n_max = static_cast<long>(std::floor(n_bound)) + 2;

    // range_max arrives as a double; its binary expansion is exact
    const Rational range_exact = rational_from_double(range_max);

    PointCloud cloud;
    cloud.spec = spec;
    cloud.range_max = range_max;
    cloud.signed_range = signed_range;

    // margins absorb the coordinate rounding of m x1 + n x2 (coords reach ~1e6
    // at the largest cutoffs); anything inside the margin is decided exactly
    const double vmargin = 1e-8 * std::max(1.0, v_hi);
    const double wmargin = 1e-8 * std::max(1.0, W);
    double wv = spec.window.outer.value(K);

    for (long n = n_min; n <= n_max; ++n) {
        // m interval from value and conj constraints
        double lo1 = (v_lo - n * x2) / x1, hi1 = (v_hi - n * x2) / x1;
        double lo2 = (-W - n * y2) / y1, hi2 = (W - n * y2) / y1;
        double lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
        if (lo > hi + 2) continue;
        long m_lo = static_cast<long>(std::floor(lo)) - 1;
        long m_hi = static_cast<long>(std::ceil(hi)) + 1;
        for (long m = m_lo; m <= m_hi; ++m) {
            double v = m * x1 + n * x2;
            double c = m * y1 + n * y2;
            // fast reject far outside
            if (v < v_lo - vmargin || v > v_hi + vmargin) continue;
            if (std::abs(c) > W + wmargin) continue;

            FieldElement alpha = K.add(K.mul_rational(g1, Rational(m)),
                                       K.mul_rational(g2, Rational(n)));
            FieldElement point = K.mul(alpha, gamma);
            // exact physical range check on the scaled point where the
            // double is inconclusive
            double pv_est = v * gv;
            double pmargin = vmargin * gv;
            bool in_range;
            if (!signed_range) {
                if (pv_est > pmargin && pv_est < range_max - pmargin)
                    in_range = true;
                else
                    in_range = K.sign(point) > 0 &&
                               K.compare_rational(point, range_exact) <= 0;
            } else {
                if (std::abs(pv_est) < range_max - pmargin)
                    in_range = true;
                else {
                    FieldElement abs_point = K.sign(point) >= 0 ? point : K.neg(point);
                    in_range = K.compare_rational(abs_point, range_exact) <= 0;
                }
            }
            if (!in_range) continue;

            // window membership: double prefilter, exact fallback near boundary
            bool in_window;
            double outer_gap = wv - std::abs(c);
            bool near_outer = std::abs(outer_gap) <= wmargin;
            bool near_inner = false;
            double iv = 0;
            if (spec.window.inner) {
                iv = spec.window.inner->value(K);
                near_inner = std::abs(std::abs(c) - iv) <= wmargin;
            }
            if (!near_outer && !near_inner) {
                in_window = outer_gap > 0 && (!spec.window.inner || std::abs(c) > iv);
            } else {
                in_window = spec.window.contains(K, alpha);
            }
            if (!in_window) continue;

            Point p;
            p.el = std::move(point);
            auto [pv, pc] = K.embed(p.el);
            p.value = pv;
            p.conj_value = pc;
            cloud.pts.push_back(std::move(p));
            if (cloud.pts.size() > opts.point_cap)
                throw ResourceError("enumeration exceeded point cap");
        }
    }

    std::sort(cloud.pts.begin(), cloud.pts.end(), [&](const Point& p, const Point& q) {
        if (p.value != q.value) return p.value < q.value;
        return K.compare(p.el, q.el) < 0;
    });
    compute_stats(cloud);
    cloud.exact_density = model_density(K, spec);
    return cloud;
}

std::pair<double, double> delaunay_stats(const PointCloud& cloud) {
    if (cloud.size() < 2)
        throw CompletenessError("delaunay stats need at least 2 points");
    return {cloud.r_min, cloud.gap_max};
}

double model_density(const QuadraticField& K, const ModelSetSpec& spec) {
    if (spec.lattice_mode) return 1.0 / to_double(spec.xi);
    double len = 2 * spec.window.outer.value(K);
    if (spec.window.inner) len -= 2 * spec.window.inner->value(K);
    double covol = std::sqrt(std::abs(to_double(ideal_disc(K, spec.ideal))));
    double gv = std::abs(K.embed_value(spec.scale));
    return len / (covol * gv);
}

namespace {

void sort_dedup(const QuadraticField& K, PointCloud& cloud) {
    auto& pts = cloud.pts;
    std::sort(pts.begin(), pts.end(), [&](const Point& p, const Point& q) {
        if (std::abs(p.value - q.value) > 1e-9 * (1 + std::abs(p.value)))
            return p.value < q.value;
        int c = K.compare(p.el, q.el);
        return c < 0;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point& p, const Point& q) { return p.el == q.el; }),
              pts.end());
}

}  // namespace

PointCloud monoid_product(const QuadraticField& K, const PointCloud& a, const PointCloud& b,
                          double range_max) {
    if (a.empty() || b.empty()) {
        PointCloud out;
        out.range_max = range_max;
        out.spec = a.spec;
        out.derived = true;
        out.note = "product(empty)";
        return out;
    }
    double min_a = a.min_positive(), min_b = b.min_positive();
    double need_a = range_max / min_b, need_b = range_max / min_a;
    if (a.range_max < need_a)
        throw CompletenessError("left factor range insufficient for product", need_a);
    if (b.range_max < need_b)
        throw CompletenessError("right factor range insufficient for product", need_b);

    PointCloud out;
    out.spec = a.spec;
    out.derived = true;
    {
        std::ostringstream os;
        os << "monoid_product(needed left " << need_a << ", right " << need_b << ")";
        out.note = os.str();
    }
    out.range_max = range_max;
    for (const auto& pa : a.pts) {
        if (pa.value <= 0) continue;
        if (pa.value * min_b > range_max * (1 + 1e-12)) break;
        for (const auto& pb : b.pts) {
            if (pb.value <= 0) continue;
            double v = pa.value * pb.value;
            if (v > range_max * (1 + 1e-12)) break;
            Point p;
            p.el = K.mul(pa.el, pb.el);
            auto [pv, pc] = K.embed(p.el);
            if (pv > range_max * (1 + 1e-12)) continue;
            p.value = pv;
            p.conj_value = pc;
            out.pts.push_back(std::move(p));
        }
    }
    sort_dedup(K, out);
    compute_stats(out);
    return out;
}

double sumset_required_range(const QuadraticField& K, const ModelSetSpec& a,
                             const ModelSetSpec& b, double range_max) {
    if (a.lattice_mode || b.lattice_mode) return range_max + to_double(a.xi) + 1;
    // gamma = alpha + beta needs alpha' inside an interval of width
    // delta(gamma') = w_a + w_b - |gamma'|; the physical size of the smallest
    // such alpha scales like covol / delta.  The worst delta over the target
    // truncation is read off an enumeration of the summed (closed) window.
    double w_sum = a.window.outer.value(K) + b.window.outer.value(K);
    ModelSetSpec closure = a;
    closure.window.outer = BoundSpec{rational_from_double(w_sum), Rational(0), false};
    closure.window.strict = false;
    closure.window.inner.reset();
    PointCloud guide = enumerate_modelset(K, closure, range_max);
    double delta_min = w_sum;
    for (const auto& p : guide.pts) {
        double d = w_sum - std::abs(p.conj_value);
        if (d > 1e-12) delta_min = std::min(delta_min, d);
    }
    double covol = std::sqrt(std::abs(to_double(ideal_disc(K, a.ideal))));
    return range_max + 3 * covol / delta_min + 3 * covol;
}

PointCloud sumset(const QuadraticField& K, const PointCloud& a, const PointCloud& b,
                  double range_max) {
    bool b_is_zero_only = b.size() == 1 && b.pts[0].el.is_zero();
    if (!b_is_zero_only && !(a.signed_range && b.signed_range))
        throw InvalidInputError("sumset requires signed input enumerations");
    if (!b_is_zero_only && !a.derived && !b.derived) {
        double need = sumset_required_range(K, a.spec, b.spec, range_max);
        if (a.range_max + 1e-9 < need || b.range_max + 1e-9 < need)
            throw CompletenessError("sumset inputs too short for requested range", need);
    }

    PointCloud out;
    out.spec = a.spec;
    out.derived = true;
    {
        std::ostringstream os;
        os << "sumset(inputs cover " << a.range_max << "/" << b.range_max << ")";
        out.note = os.str();
    }
    out.range_max = range_max;
    for (const auto& pa : a.pts) {
        for (const auto& pb : b.pts) {
            double v = pa.value + pb.value;
            if (v <= -1e-9 || v > range_max * (1 + 1e-12) + 1e-9) continue;
            Point p;
            p.el = K.add(pa.el, pb.el);
            int sg = K.sign(p.el);
            if (sg <= 0) continue;
            auto [pv, pc] = K.embed(p.el);
            if (pv > range_max * (1 + 1e-12)) continue;
            p.value = pv;
            p.conj_value = pc;
            out.pts.push_back(std::move(p));
        }
    }
    sort_dedup(K, out);
    compute_stats(out);
    return out;
}

ModelSetSpec star_product(const QuadraticField& K, const ModelSetSpec& a, const ModelSetSpec& b) {
    if (a.lattice_mode || b.lattice_mode)
        throw InvalidInputError("star product undefined in lattice mode");
    if (a.d != b.d) throw InvalidInputError("star product requires a common field");
    if (a.window.inner || b.window.inner)
        throw InvalidInputError("star product of annulus windows not supported");
    if (a.window.outer.pi_factor && b.window.outer.pi_factor)
        throw InvalidInputError("cannot multiply two pi/3 window factors");
    ModelSetSpec out;
    out.d = a.d;
    out.ideal = ideal_product(K, a.ideal, b.ideal);
    out.window.outer.mult = a.window.outer.mult * b.window.outer.mult;
    out.window.outer.unit_exp = a.window.outer.unit_exp + b.window.outer.unit_exp;
    out.window.outer.pi_factor = a.window.outer.pi_factor || b.window.outer.pi_factor;
    // the product of an open interval with anything is open
    out.window.strict = a.window.strict || b.window.strict;
    out.scale = K.mul(a.scale, b.scale);
    return out;
}

ModelSetSpec scale_by_unit(const QuadraticField& K, const ModelSetSpec& spec, long k) {
    if (spec.lattice_mode) throw InvalidInputError("scale_by_unit undefined in lattice mode");
    ModelSetSpec out = spec;
    out.ideal = ideal_scale(K, spec.ideal, K.unit_power(k));
    out.window = spec.window.scaled_by_unit_power(k);
    return out;
}

std::vector<bool> coding_function(const QuadraticField& K, const ModelSetSpec& spec, long a_max) {
    if (spec.lattice_mode) throw InvalidInputError("coding function undefined in lattice mode");
    if (!K.zt_equals_ok)
        throw InvalidInputError("coding function requires Z[theta] = O_K");
    if (spec.window.outer.unit_exp < 0 || spec.window.inner)
        throw InvalidInputError("coding function requires window exponent x >= 0");
    std::vector<bool> bits;
    bits.reserve(a_max);
    double tc = K.embed_conj(K.fu);
    for (long a = 1; a <= a_max; ++a) {
        double target = -a * tc;
        long b0 = static_cast<long>(std::llround(target));
        bool hit = false;
        for (long b : {b0, b0 - 1, b0 + 1}) {
            FieldElement e = K.add(K.mul_rational(K.fu, Rational(a)), K.from_rational(Rational(b)));
            if (bound_compare(K, e, spec.window.outer, spec.window.outer_rel())) {
                hit = true;
                break;
            }
        }
        bits.push_back(hit);
    }
    return bits;
}

IdealBasis extend_to_ideal(const QuadraticField& K, const ModelSetSpec& spec) {
    if (spec.lattice_mode) throw InvalidInputError("extension undefined in lattice mode");
    return ideal_scale(K, spec.ideal, spec.scale);
}

std::pair<BigInt, BigInt> basis_coordinates(const QuadraticField& K, const ModelSetSpec& spec,
                                            const FieldElement& el) {
    if (spec.lattice_mode) {
        Rational k = el.a / spec.xi;
        if (mp::denominator(k) != 1 || el.b != 0)
            throw NumericError("point not on the lattice");
        return {mp::numerator(k), BigInt(0)};
    }
    FieldElement alpha = K.div(el, spec.scale);
    const IdealBasis& A = spec.ideal;
    Rational xa = alpha.a * A.den, yb = alpha.b * A.den;
    if (mp::denominator(xa) != 1 || mp::denominator(yb) != 1)
        throw NumericError("point not on the ideal lattice");
    BigInt x = mp::numerator(xa), y = mp::numerator(yb);
    if (y % A.c != 0) throw NumericError("point not on the ideal lattice");
    BigInt n = y / A.c;
    BigInt rem = x - n * A.b;
    if (rem % A.a != 0) throw NumericError("point not on the ideal lattice");
    return {rem / A.a, n};
}

void cloud_to_csv(std::ostream& os, const QuadraticField& K, const PointCloud& cloud) {
    os << "a,b,value,conj_value\n";
    char buf[64];
    for (const auto& p : cloud.pts) {
        auto [m, n] = basis_coordinates(K, cloud.spec, p.el);
        os << m << "," << n << ",";
        std::snprintf(buf, sizeof buf, "%.17g", p.value);
        os << buf << ",";
        std::snprintf(buf, sizeof buf, "%.17g", p.conj_value);
        os << buf << "\n";
    }
}

}  // namespace qcnt
