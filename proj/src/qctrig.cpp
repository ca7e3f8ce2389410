#include "qcnt/qctrig.hpp"
#include "qcnt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcnt {

namespace {

// digamma for z >= 8 by the asymptotic series (recurrence below that)
double digamma(double z) {
    double acc = 0;
    while (z < 8) {
        acc -= 1.0 / z;
        z += 1;
    }
    double inv = 1.0 / z, inv2 = inv * inv;
    // ln z - 1/(2z) - sum B_2k / (2k z^2k)
    double series = inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 / 240)));
    return acc + std::log(z) - 0.5 * inv - series;
}

size_t terms_for(const TrigTables& t, double x, bool clamp = false) {
    double ax = std::abs(x);
    if (t.alphas.empty() || (!clamp && ax > 0.1 * t.alphas.back() + 1e-12))
        throw NumericError("argument beyond the 10x accuracy range of the tables");
    // lattice tails are exact Gamma/digamma identities, so the truncation only
    // needs to clear the argument; generic clouds keep a long tail window
    double floor_terms = t.lattice ? 64.0 * t.mean_gap : 1500.0 * t.mean_gap;
    double want = std::max(10.0 * ax, std::min(t.alphas.back(), floor_terms));
    size_t n = static_cast<size_t>(std::lower_bound(t.alphas.begin(), t.alphas.end(), want) -
                                   t.alphas.begin());
    return std::min(std::max<size_t>(n + 1, 16), t.alphas.size());
}

struct Tail {
    double t2 = 0;  // sum_{alpha > X} alpha^-2
    double t4 = 0;  // sum alpha^-4
};

// log of prod_{n>N} (1 - y^2/n^2) via Gamma ratios (exact lattice identity)
double lattice_log_tail(double y, double N) {
    return 2 * std::lgamma(N + 1) - std::lgamma(N + 1 - y) - std::lgamma(N + 1 + y);
}

Tail product_tail(const TrigTables& t, size_t used) {
    Tail tail;
    double X = t.alphas[used - 1] + 0.5 * t.mean_gap;
    tail.t2 = t.density / X;
    tail.t4 = t.density / (3 * X * X * X);
    return tail;
}


// periodically rescaled complex product: intermediate partial products of the
// sine factors pass through e^(2|x|)-sized magnitudes before the far factors
// shrink them back, which overflows doubles for |x| beyond ~350
struct ScaledProduct {
    Complex val{1.0, 0.0};
    long exp2 = 0;
    void mul(Complex f) {
        val *= f;
        double m = std::abs(val.real()) + std::abs(val.imag());
        if (m > 1e100 || (m > 0 && m < 1e-100)) {
            int e = 0;
            std::frexp(m, &e);
            val = {std::ldexp(val.real(), -e), std::ldexp(val.imag(), -e)};
            exp2 += e;
        }
    }
    Complex finish(Complex log_tail) const {
        // val * 2^exp2 * exp(log_tail)
        Complex t = std::exp(log_tail + Complex(exp2 * 0.6931471805599453094, 0.0));
        return val * t;
    }
};

// complex core of the truncated sine product with tail correction
Complex sine_product(const TrigTables& t, Complex z, size_t used, double* rel_err) {
    ScaledProduct prod;
    prod.mul(z);
    for (size_t i = 0; i < used; ++i) {
        Complex r = z / t.alphas[i];
        prod.mul((1.0 - r) * (1.0 + r));
    }
    Complex z2 = z * z;
    double err;
    Complex log_tail;
    if (t.lattice && z.imag() == 0.0) {
        double N = t.alphas[used - 1] / t.xi;
        log_tail = lattice_log_tail(z.real() / t.xi, N);
        err = 1e-14;
    } else {
        Tail tl = product_tail(t, used);
        log_tail = -z2 * tl.t2 - z2 * z2 * (tl.t4 / 2);
        double X = t.alphas[used - 1];
        err = std::abs(z2) * t.density * (0.5 * t.gap_max + 1) / (X * X) +
              std::norm(z2) * t.density / (2 * X * X * X);
    }
    if (rel_err) *rel_err = err + 1e-15 * used;
    return prod.finish(log_tail);
}

// logarithmic derivative of the sine product: 1/x + sum 2x/(x^2 - a^2) + tail
double log_deriv(const TrigTables& t, double x, size_t used) {
    KahanSum s;
    s.add(1.0 / x);
    double x2 = x * x;
    for (size_t i = 0; i < used; ++i) {
        double a = t.alphas[i];
        s.add(2 * x / (x2 - a * a));
    }
    if (t.lattice) {
        double y = x / t.xi;
        double N = t.alphas[used - 1] / t.xi;
        s.add((digamma(N + 1 - y) - digamma(N + 1 + y)) / t.xi);
    } else {
        double X = t.alphas[used - 1] + 0.5 * t.mean_gap;
        // -2x * rho * int_X^inf du/(u^2-x^2) = -rho ln((X+x)/(X-x))
        s.add(-t.density * std::log((X + x) / (X - x)));
    }
    return s.value();
}

double log_deriv_slope(const TrigTables& t, double x, size_t used) {
    double x2 = x * x;
    double s = -1.0 / x2;
    for (size_t i = 0; i < used; ++i) {
        double a2 = t.alphas[i] * t.alphas[i];
        double d = x2 - a2;
        s -= 2 * (x2 + a2) / (d * d);
    }
    return s;
}

void fill_stats(TrigTables& t) {
    if (t.alphas.size() >= 2) {
        double gmax = 0, total = t.alphas.back() - t.alphas.front();
        for (size_t i = 1; i < t.alphas.size(); ++i)
            gmax = std::max(gmax, t.alphas[i] - t.alphas[i - 1]);
        t.gap_max = gmax;
        t.mean_gap = total / static_cast<double>(t.alphas.size() - 1);
        t.density = 1.0 / t.mean_gap;
    }
}

}  // namespace

TrigTables build_trig_tables(const PointCloud& cloud) {
    TrigTables t;
    if (cloud.spec.lattice_mode && !cloud.derived) {
        t.lattice = true;
        t.xi = to_double(cloud.spec.xi);
    }
    t.alphas.reserve(cloud.size());
    for (const auto& p : cloud.pts)
        if (p.value > 0) t.alphas.push_back(p.value);
    if (t.alphas.empty()) throw CompletenessError("trig tables need positive points");
    fill_stats(t);
    return t;
}

TrigTables build_trig_tables_lattice(const Rational& xi, size_t count) {
    TrigTables t;
    t.lattice = true;
    t.xi = to_double(xi);
    t.alphas.reserve(count);
    for (size_t k = 1; k <= count; ++k) t.alphas.push_back(t.xi * static_cast<double>(k));
    fill_stats(t);
    return t;
}

void cos_zeros(TrigTables& t, size_t n, ZeroMethod method) {
    if (n + 1 > t.alphas.size())
        throw CompletenessError("cos_zeros needs n <= available alphas - 1");
    if (t.betas.size() >= n) return;

    if (t.lattice && method == ZeroMethod::automatic) {
        // exact scaled-lattice identity: zeros of c at xi*(k - 1/2)
        for (size_t k = t.betas.size() + 1; k <= n; ++k)
            t.betas.push_back(t.xi * (static_cast<double>(k) - 0.5));
        return;
    }

    for (size_t k = t.betas.size() + 1; k <= n; ++k) {
        double left = (k == 1) ? 0.0 : t.alphas[k - 2];
        double right = t.alphas[k - 1];
        double pad = 1e-9 * (right - left);
        double lo = left + pad, hi = right - pad;
        size_t used = terms_for(t, right, /*clamp=*/true);
        double glo = log_deriv(t, lo, used), ghi = log_deriv(t, hi, used);
        if (!(glo > 0) || !(ghi < 0))
            throw NumericError("interlacing violation: no sign change in gap " +
                               std::to_string(k));
        for (int it = 0; it < 70 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++it) {
            double mid = 0.5 * (lo + hi);
            (log_deriv(t, mid, used) > 0 ? lo : hi) = mid;
        }
        double beta = 0.5 * (lo + hi);
        // Newton polish on the monotone logarithmic derivative, using the
        // truncation the evaluators would pick at beta itself so that
        // c_abs(beta) vanishes to full precision
        size_t used_b = terms_for(t, beta, /*clamp=*/true);
        for (int it = 0; it < 3; ++it) {
            double g = log_deriv(t, beta, used_b);
            double gp = log_deriv_slope(t, beta, used_b);
            double step = g / gp;
            double nb = beta - step;
            if (nb > left && nb < right) beta = nb;
        }
        t.betas.push_back(beta);
    }
}

TrigValue s_abs(const TrigTables& t, double x) {
    if (x == 0) return {0.0, 0.0};
    size_t used = terms_for(t, x);
    double err;
    Complex v = sine_product(t, Complex(x, 0), used, &err);
    return {v.real(), err};
}

TrigValue c_abs(const TrigTables& t, double x) {
    size_t used = terms_for(t, x);
    double ax = std::abs(x);
    if (ax < 1e-9) {
        // c(0) = lim s(x)/x = 1
        double prod = 1;
        for (size_t i = 0; i < used; ++i) {
            double r = x / t.alphas[i];
            prod *= (1 - r) * (1 + r);
        }
        return {prod, 1e-12};
    }
    // nearest table zero
    size_t m = static_cast<size_t>(std::lower_bound(t.alphas.begin(), t.alphas.end(), ax) -
                                   t.alphas.begin());
    double dist = std::numeric_limits<double>::infinity();
    size_t m_near = m;
    for (size_t c : {m, m > 0 ? m - 1 : m}) {
        if (c < t.alphas.size() && std::abs(t.alphas[c] - ax) < dist) {
            dist = std::abs(t.alphas[c] - ax);
            m_near = c;
        }
    }

    if (dist > 1e-6 * std::max(1.0, ax)) {
        double err;
        Complex s = sine_product(t, Complex(x, 0), used, &err);
        double ld = log_deriv(t, x, used);
        return {s.real() * ld, err + 1e-12 * std::abs(ld)};
    }

    // deflated product near the zero alpha_m: s = F_m Q,
    // c = Q (F_m' + F_m * Q'/Q)
    double am = t.alphas[m_near];
    ScaledProduct qs;
    qs.mul(Complex(x, 0));
    for (size_t i = 0; i < used; ++i) {
        if (i == m_near) continue;
        double r = x / t.alphas[i];
        qs.mul(Complex((1 - r) * (1 + r), 0.0));
    }
    double x2 = x * x;
    Complex q;
    if (t.lattice) {
        double N = t.alphas[used - 1] / t.xi;
        q = qs.finish(Complex(lattice_log_tail(x / t.xi, N), 0));
    } else {
        Tail tl = product_tail(t, used);
        q = qs.finish(Complex(-x2 * tl.t2 - x2 * x2 * (tl.t4 / 2), 0));
    }
    double ld_def = 1.0 / x;
    for (size_t i = 0; i < used; ++i) {
        if (i == m_near) continue;
        double a = t.alphas[i];
        ld_def += 2 * x / (x2 - a * a);
    }
    if (t.lattice) {
        double y = x / t.xi;
        double N = t.alphas[used - 1] / t.xi;
        ld_def += (digamma(N + 1 - y) - digamma(N + 1 + y)) / t.xi;
    } else {
        double X = t.alphas[used - 1] + 0.5 * t.mean_gap;
        ld_def += -t.density * std::log((X + x) / (X - x));
    }
    double fm = (1 - x / am) * (1 + x / am);
    double c = q.real() * (-2 * x / (am * am) + fm * ld_def);
    return {c, 1e-10 + std::abs(c) * 1e-10};
}

TrigValue pi_qc(TrigTables& t, size_t n_terms) {
    if (n_terms + 2 > t.alphas.size())
        throw CompletenessError("pi_qc needs n_terms + 1 cosine zeros; enlarge the tables");
    cos_zeros(t, n_terms + 1);
    KahanSum lg;
    lg.add(-std::log(t.betas[0]));
    double half = 0;
    for (size_t n = 1; n <= n_terms; ++n) {
        lg.add(2 * std::log(t.alphas[n - 1]) - std::log(t.betas[n - 1]) -
               std::log(t.betas[n]));
        if (n == n_terms / 2) half = lg.value();
    }
    double value = std::exp(lg.value());
    double conv = std::abs(value - std::exp(half));
    t.pi_value = value;
    t.pi_convergence = conv;
    t.pi_terms = n_terms;
    return {value, conv};
}

namespace {

void ensure_pi(TrigTables& t) {
    if (t.pi_value > 0) return;
    size_t n = t.alphas.size() > 2 ? t.alphas.size() - 2 : 0;
    if (n == 0) throw CompletenessError("tables too small for the Wallis constant");
    pi_qc(t, n);
}

Complex cosine_product(const TrigTables& t, Complex z, size_t used) {
    ScaledProduct prod;
    for (size_t i = 0; i < used && i < t.betas.size(); ++i) {
        Complex r = z / t.betas[i];
        prod.mul((1.0 - r) * (1.0 + r));
    }
    if (t.lattice && z.imag() == 0.0) {
        // prod_{n>N} (1 - y^2/(n-1/2)^2) via Gamma ratios at half-integers
        double N = t.alphas[used - 1] / t.xi;
        double y = z.real() / t.xi;
        double L = 2 * std::lgamma(N + 0.5) - std::lgamma(N + 0.5 - y) -
                   std::lgamma(N + 0.5 + y);
        return prod.finish(Complex(L, 0));
    }
    Complex z2 = z * z;
    Tail tl = product_tail(t, used);  // beta density equals alpha density
    return prod.finish(-z2 * tl.t2 - z2 * z2 * (tl.t4 / 2));
}

}  // namespace

std::pair<Complex, Complex> trig_normalized(TrigTables& t, Complex z) {
    ensure_pi(t);
    double zb = std::abs(z);
    size_t used = terms_for(t, zb);
    cos_zeros(t, std::min(used, t.alphas.size() - 1));
    Complex s = t.pi_value * sine_product(t, z, used, nullptr);
    Complex c = cosine_product(t, z, std::min(used, t.betas.size()));
    return {s, c};
}

Complex exp_qc(TrigTables& t, double x, bool normalized) {
    Complex e;
    if (normalized) {
        auto [s, c] = trig_normalized(t, Complex(x, 0));
        e = c + Complex(0, 1) * s;
    } else {
        TrigValue s = s_abs(t, x);
        TrigValue c = c_abs(t, x);
        e = {c.value, s.value};
    }
    // the image lies in C*: a joint vanishing would contradict simple zeros
    if (std::abs(e) < 1e-12)
        throw NumericError("exponential vanished within 1e-12 at x = " + std::to_string(x));
    return e;
}

std::vector<CurveSample> curve_samples(TrigTables& t, double x_min, double x_max, size_t n,
                                       bool normalized) {
    if (n < 2) throw InvalidInputError("curve sampling needs n >= 2");
    std::vector<CurveSample> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        double x = x_min + (x_max - x_min) * static_cast<double>(i) / (n - 1);
        out.push_back({x, exp_qc(t, x, normalized)});
    }
    return out;
}

std::string curve_svg(const std::vector<CurveSample>& samples) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : samples) {
        xmin = std::min(xmin, s.z.real());
        xmax = std::max(xmax, s.z.real());
        ymin = std::min(ymin, s.z.imag());
        ymax = std::max(ymax, s.z.imag());
    }
    double w = xmax - xmin, h = ymax - ymin;
    double pad = 0.05 * std::max(w, h);
    std::ostringstream os;
    os.precision(8);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (xmin - pad) << " "
       << (ymin - pad) << " " << (w + 2 * pad) << " " << (h + 2 * pad) << "\">\n";
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\""
       << (0.002 * std::max(w, h)) << "\" points=\"";
    for (const auto& s : samples) os << s.z.real() << "," << s.z.imag() << " ";
    os << "\"/>\n</svg>\n";
    return os.str();
}

namespace {

// t_a = s_a / c_a = pi_a / LD with LD the logarithmic derivative of the sine
// product, so tangent values need no cosine zeros and can use the full table
double tangent(TrigTables& t, double x) {
    return t.pi_value / log_deriv(t, x, t.alphas.size());
}

double tangent_slope(TrigTables& t, double x) {
    double h = 1e-6 * (1 + std::abs(x));
    return (tangent(t, x + h) - tangent(t, x - h)) / (2 * h);
}

}  // namespace

PhasePairResult phase_pair_check(TrigTables& t, double gamma_value, double x) {
    ensure_pi(t);
    double reach = std::abs(gamma_value) * (std::abs(x) + 4 * t.mean_gap) + 1;
    if (10 * reach > t.alphas.back())
        throw NumericError("phase check needs tables past 10x the scaled arguments");
    PhasePairResult res;
    double tx = tangent(t, x);

    // scan the next 3 same-parity branches for a solution of t(y) = t(x):
    // the sine flips sign at each point, so a full U(1) phase match (not the
    // antipodal tangent match) needs an even number of points between x and y
    size_t a0 = static_cast<size_t>(std::upper_bound(t.alphas.begin(), t.alphas.end(), x) -
                                    t.alphas.begin());
    for (size_t branch = a0 + 1; branch + 1 < t.alphas.size() && branch < a0 + 7 && !res.found;
         branch += 2) {
        double lo = t.alphas[branch], hi = t.alphas[branch + 1];
        double pad = 1e-7 * (hi - lo);
        lo += pad;
        hi -= pad;
        const int kSamples = 128;
        double prev_y = lo, prev_h = tangent(t, lo) - tx;
        for (int i = 1; i <= kSamples; ++i) {
            double y = lo + (hi - lo) * i / kSamples;
            double hval = tangent(t, y) - tx;
            if (std::isfinite(prev_h) && std::isfinite(hval) && prev_h * hval < 0 &&
                std::abs(prev_h) < 1e8 && std::abs(hval) < 1e8) {
                double a = prev_y, b = y, ha = prev_h;
                for (int it = 0; it < 60; ++it) {
                    double mid = 0.5 * (a + b);
                    double hm = tangent(t, mid) - tx;
                    if (ha * hm <= 0)
                        b = mid;
                    else {
                        a = mid;
                        ha = hm;
                    }
                }
                res.partner = 0.5 * (a + b);
                res.found = true;
                break;
            }
            prev_y = y;
            prev_h = hval;
        }
    }
    if (!res.found) return res;

    double gx = gamma_value * x, gy = gamma_value * res.partner;
    double dt = std::abs(tangent(t, gx) - tangent(t, gy));
    double scale = 0.5 * (std::abs(tangent_slope(t, gx)) + std::abs(tangent_slope(t, gy)));
    res.residual = dt / std::max(scale, 1e-12);
    return res;
}

}  // namespace qcnt
