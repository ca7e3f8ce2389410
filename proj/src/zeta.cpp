#include "qcnt/zeta.hpp"
#include "qcnt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qcnt {

namespace {

Complex pow_neg_s(double alpha, Complex s) {
    // alpha^(-s) for alpha > 0, principal branch (real log)
    return std::exp(-s * std::log(alpha));
}

// positive-part view: index of first positive point
size_t first_positive(const PointCloud& cloud) {
    size_t i = 0;
    while (i < cloud.pts.size() && cloud.pts[i].value <= 0) ++i;
    return i;
}

// Counting deviation F(u) = rho u - N(u): the a-fractional part of the
// continuation (equal to {u}_a on the unit lattice).  Bounded for model sets;
// rho is the exact cut-and-project density when available.
struct CountingDeviation {
    double rho = 1;
    double rho_uncertainty = 0;  // nonzero for derived clouds (empirical rho)
    double mean = 0;             // empirical mean of F over the cloud
    double dev = 0;              // sup |F - mean| observed
};

CountingDeviation counting_deviation(const PointCloud& cloud, size_t lo) {
    CountingDeviation cd;
    size_t n = cloud.pts.size();
    double X = cloud.pts[n - 1].value;
    if (cloud.exact_density > 0) {
        cd.rho = cloud.exact_density;
    } else {
        cd.rho = static_cast<double>(n - lo) / X;
        // empirical density: compare the two halves for an uncertainty scale
        size_t mid = lo;
        while (mid < n && cloud.pts[mid].value < X / 2) ++mid;
        double r1 = static_cast<double>(mid - lo) / (X / 2);
        double r2 = static_cast<double>(n - mid) / (X - X / 2);
        cd.rho_uncertainty = std::abs(r1 - r2) + 2.0 / X;
    }
    // F integrates in closed form over the inter-point intervals
    KahanSum integral;
    double len = X - cloud.pts[lo].value;
    for (size_t i = lo; i + 1 < n; ++i) {
        double u1 = cloud.pts[i].value, u2 = cloud.pts[i + 1].value;
        double count = static_cast<double>(i - lo + 1);
        integral.add(0.5 * cd.rho * (u2 * u2 - u1 * u1) - count * (u2 - u1));
    }
    cd.mean = len > 0 ? integral.value() / len : 0;
    double dev = 0;
    for (size_t i = lo; i < n; ++i) {
        double count_before = static_cast<double>(i - lo);
        double f_left = cd.rho * cloud.pts[i].value - count_before;      // just before the jump
        double f_right = f_left - 1;                                     // just after
        dev = std::max(dev, std::abs(f_left - cd.mean));
        dev = std::max(dev, std::abs(f_right - cd.mean));
    }
    cd.dev = dev;
    return cd;
}

}  // namespace

EvalResult zeta_direct(const PointCloud& cloud, Complex s) {
    if (s.real() <= 1.0)
        throw ArithmeticError("zeta_direct requires Re(s) > 1 (use the continuation)");
    EvalResult r;
    r.method = "direct";
    r.cutoff = cloud.range_max;
    size_t lo = first_positive(cloud);
    if (lo == cloud.pts.size()) {
        r.value = 0;
        r.error_bound = 0;
        return r;
    }
    ComplexKahanSum sum;
    for (size_t i = lo; i < cloud.pts.size(); ++i) sum.add(pow_neg_s(cloud.pts[i].value, s));
    r.value = sum.value();
    double sigma = s.real();
    double rho = cloud.density_est;
    double X = cloud.range_max;
    r.error_bound = rho * std::pow(X, 1.0 - sigma) / (sigma - 1.0) *
                    (1.0 + cloud.gap_max * rho);
    r.rigorous = true;
    return r;
}

EvalResult zeta_continued(const PointCloud& cloud, Complex s, long x_index) {
    double sigma = s.real();
    if (s == Complex(1.0, 0.0)) throw ArithmeticError("zeta has a simple pole at s = 1");
    if (sigma <= 0.0)
        throw ArithmeticError("zeta_continued requires Re(s) > 0 (use zeta_deep)");

    size_t lo = first_positive(cloud);
    size_t n = cloud.pts.size();
    if (lo >= n) throw CompletenessError("empty cloud in zeta_continued");

    size_t xi = (x_index < 0) ? n - 1 : static_cast<size_t>(x_index);
    if (xi < lo || xi >= n) throw InvalidInputError("x_index outside the cloud");

    const double x = cloud.pts[xi].value;
    CountingDeviation cd = counting_deviation(cloud, lo);

    ComplexKahanSum sum;
    for (size_t i = lo; i <= xi; ++i) sum.add(pow_neg_s(cloud.pts[i].value, s));

    // rho x^(1-s)/(s-1) + F(x) x^(-s), F(u) = rho u - N(u)
    double fx = cd.rho * x - static_cast<double>(xi - lo + 1);
    Complex value = sum.value() + cd.rho * std::exp((1.0 - s) * std::log(x)) / (s - 1.0) +
                    fx * pow_neg_s(x, s);

    // -s int_x^X F(u) u^(-s-1) du in closed form per interval:
    // int (rho u - c) u^(-s-1) du = rho u^(1-s)/(1-s) + c u^(-s)/s
    {
        ComplexKahanSum acc;
        auto antideriv = [&](double u, double count) {
            return cd.rho * std::exp((1.0 - s) * std::log(u)) / (1.0 - s) +
                   count * pow_neg_s(u, s) / s;
        };
        for (size_t i = xi; i + 1 < n; ++i) {
            double u1 = cloud.pts[i].value, u2 = cloud.pts[i + 1].value;
            double count = static_cast<double>(i - lo + 1);
            acc.add(antideriv(u2, count) - antideriv(u1, count));
        }
        value -= s * acc.value();
    }

    // beyond the last point: F replaced by its empirical mean
    double X = cloud.pts[n - 1].value;
    value -= cd.mean * pow_neg_s(X, s);

    double bound = std::abs(s) * cd.dev * std::pow(X, -sigma) / sigma;
    if (cd.rho_uncertainty > 0)
        bound += cd.rho_uncertainty * std::pow(X, 1.0 - sigma) *
                 (1.0 / std::abs(s - 1.0) + 1.0);
    bound += 1e-15 * static_cast<double>(n) * std::abs(value);

    EvalResult r;
    r.method = "continued";
    r.cutoff = cloud.range_max;
    r.value = value;
    r.error_bound = bound;
    r.rigorous = true;
    return r;
}

EvalResult zeta_deep(const PointCloud& cloud, Complex s, int k, double x_target) {
    double sigma = s.real();
    if (k < 0 || k > 4) throw InvalidInputError("zeta_deep supports 0 <= k <= 4");
    if (s == Complex(1.0, 0.0)) throw ArithmeticError("zeta has a simple pole at s = 1");
    if (sigma <= -static_cast<double>(k))
        throw ArithmeticError("zeta_deep requires Re(s) > -k");

    size_t lo = first_positive(cloud);
    size_t n = cloud.pts.size();
    if (n - lo < 32) throw CompletenessError("zeta_deep needs a richer cloud");

    // evaluation point: a cloud point around x_target (default ~2 sqrt(range))
    if (x_target <= 0) x_target = 2.0 * std::sqrt(cloud.range_max);
    x_target = std::max(x_target, cloud.pts[lo + 10].value);
    x_target = std::min(x_target, cloud.pts[n - 16].value);
    size_t xi = lo;
    while (xi + 1 < n && cloud.pts[xi + 1].value <= x_target) ++xi;
    const double x = cloud.pts[xi].value;

    CountingDeviation cd = counting_deviation(cloud, lo);

    // k+1 streaming passes over [x, X]: pass j computes the empirical mean of
    // psi_j (and extremes), where psi_0 = F(u) = rho u - N(u) and
    // psi_{j+1} = int_x (psi_j - m_j).
    std::vector<double> means, half_gap, sup_tilde;
    double X = cloud.pts[n - 1].value;
    for (int level = 0; level <= k; ++level) {
        // running values psi_r(interval start), compensated accumulation
        std::vector<KahanSum> c(level + 1);
        KahanSum integral, first_half;
        double vmin = 0, vmax = 0;
        double mid = 0.5 * (x + X);
        // per-interval polynomial coefficients, coef[r] has degree r+1
        std::vector<std::vector<double>> coef(level + 1);
        for (size_t i = xi; i + 1 < n; ++i) {
            double L = cloud.pts[i + 1].value - cloud.pts[i].value;
            // psi_0 = F(alpha_i + t) = (rho alpha_i - count) + rho t
            double count = static_cast<double>(i - lo + 1);
            coef[0].assign({cd.rho * cloud.pts[i].value - count, cd.rho});
            for (int r = 1; r <= level; ++r) {
                // psi_r = c_r + int_0^t (psi_{r-1} - m_{r-1})
                const auto& p = coef[r - 1];
                auto& q = coef[r];
                q.assign(p.size() + 1, 0.0);
                q[0] = c[r].value();
                q[1] = -means[r - 1];
                for (size_t d = 0; d < p.size(); ++d) q[d + 1] += p[d] / (d + 1.0);
            }
            const auto& top = coef[level];
            // exact integral of the top polynomial over [0, L]
            double integ = 0, powL = L;
            for (size_t d = 0; d < top.size(); ++d) {
                integ += top[d] * powL / (d + 1.0);
                powL *= L;
            }
            integral.add(integ);
            if (cloud.pts[i].value < mid) first_half.add(integ);
            // extremes sampled at endpoints and midpoint
            auto eval_tail = [&](const std::vector<double>& poly, double t) {
                double v = 0, pw = t;
                for (size_t d = 1; d < poly.size(); ++d) {
                    v += poly[d] * pw;
                    pw *= t;
                }
                return v;  // poly(t) - poly(0)
            };
            for (double t : {0.0, 0.5 * L, L}) {
                double v = top[0] + eval_tail(top, t);
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
            // advance running constants by the exact increments
            for (int r = level; r >= 1; --r) c[r].add(eval_tail(coef[r], L));
            // psi_0 restarts on each interval only through its closed form;
            // level 0 carries no running constant
        }
        double len = X - x;
        double m = integral.value() / len;
        means.push_back(m);
        // mean uncertainty from the half-window spread; widened, since the
        // iterated means of self-similar sets drift log-periodically
        double m1 = first_half.value() / (mid - x);
        double m2 = (integral.value() - first_half.value()) / (X - mid);
        double spread = std::max({std::abs(m1 - m2), std::abs(m1 - m), std::abs(m2 - m)});
        half_gap.push_back(2 * spread);
        sup_tilde.push_back(std::max(vmax - m, m - vmin));
    }

    ComplexKahanSum sum;
    for (size_t i = lo; i <= xi; ++i) sum.add(pow_neg_s(cloud.pts[i].value, s));
    double fx = cd.rho * x - static_cast<double>(xi - lo + 1);
    Complex value = sum.value() + cd.rho * std::exp((1.0 - s) * std::log(x)) / (s - 1.0) +
                    fx * pow_neg_s(x, s);

    // mean terms: - sum_j c_j(s) m_j x^(-s-j), c_j(s) = s(s+1)...(s+j-1)
    Complex cj = 1.0;
    double bound = 0;
    for (int j = 0; j < k; ++j) {
        Complex term = cj * means[j] * std::exp(-(s + Complex(j, 0)) * std::log(x));
        value -= term;
        bound += std::abs(cj) * half_gap[j] * std::pow(x, -sigma - j);
        cj *= (s + Complex(j, 0));
    }
    // first dropped term: |P_k| sup|psi~_k| x^(-sigma-k) / (sigma+k)
    Complex pk = cj * (s + Complex(k, 0));
    bound += std::abs(pk) * sup_tilde[k] * std::pow(x, -sigma - k) / (sigma + k);

    EvalResult r;
    r.method = "deep-" + std::to_string(k);
    r.cutoff = cloud.range_max;
    r.value = value;
    r.error_bound = bound;
    r.rigorous = false;
    return r;
}

EvalResult bernoulli_qc(const PointCloud& cloud, int n) {
    if (n != 1 && n != 3)
        throw InvalidInputError("a-Bernoulli numbers implemented for n in {1, 3}");
    // n + 2 integrations by parts, clamped to the supported depth (k = 4 keeps
    // the dropped remainder's coefficient s(s+1)...(s+k) equal to zero at s = -3)
    int k = std::min(n + 2, 4);
    EvalResult r = zeta_deep(cloud, Complex(-n, 0), k);
    r.method = "bernoulli-" + r.method + "-experimental";
    return r;
}

EvalResult l_function(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                      Complex s, double cutoff, WeightSupport support) {
    if (s.real() <= 1.0) throw ArithmeticError("l_function requires Re(s) > 1");
    if (w.c <= 0) throw InvalidInputError("Gaussian weight parameter must be positive");

    ModelSetSpec ms = spec;
    if (support == WeightSupport::lattice && !spec.lattice_mode) {
        // full-ideal sum: the Gaussian does the windowing
        ms.window.outer = BoundSpec{rational_from_double(w.support_radius(22.0) + 1.0),
                                    Rational(0), false};
        ms.window.strict = false;
        ms.window.inner.reset();
    }
    PointCloud cloud = enumerate_modelset(K, ms, cutoff);

    EvalResult r;
    r.method = support == WeightSupport::window ? "l-window" : "l-lattice";
    r.cutoff = cutoff;
    ComplexKahanSum sum;
    double max_weight = 0;
    for (const auto& p : cloud.pts) {
        if (p.value <= 0) continue;
        double chi = spec.lattice_mode ? 1.0 : w.f(p.conj_value);
        max_weight = std::max(max_weight, chi);
        sum.add(chi * pow_neg_s(p.value, s));
    }
    r.value = sum.value();
    double sigma = s.real();
    double rho = cloud.density_est;
    r.error_bound = max_weight * rho * std::pow(cutoff, 1.0 - sigma) / (sigma - 1.0) *
                    (1.0 + cloud.gap_max * rho);
    r.rigorous = true;
    return r;
}

}  // namespace qcnt
