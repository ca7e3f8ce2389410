#include "qcnt/theta.hpp"
#include "qcnt/errors.hpp"
#include "qcnt/gammafn.hpp"
#include "qcnt/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace qcnt {

namespace {

constexpr double kExpCut = 44.5;  // exp(-44.5) ~ 5e-20

struct SeriesTerm {
    double value;
    double weight;
    double conj;
};

/// Weighted point list for one side of a theta identity, complete for all
/// evaluation arguments t >= t_min.
struct ThetaSeries {
    std::vector<SeriesTerm> terms;  // positive points, ascending
    double half_const = 0.5;       // (1/2) chi(0) resp. (1/2) f-dual(0)
    double x_phys = 0;             // physical truncation used
    double x_int = 0;              // internal truncation used
    double covol = 1;              // lattice covolume
    double kappa = 0;              // points per unit physical length bound
    double min_positive = 0;

    double eval(double t) const {
        KahanSum s;
        s.add(half_const);
        for (const auto& tm : terms) {
            double e = M_PI * tm.value * tm.value * t;
            if (e > kExpCut + 20) break;
            s.add(tm.weight * std::exp(-e));
        }
        return s.value();
    }

    // physical Gaussian tail beyond x_phys: at most kappa points per unit
    // length, positions >= x_phys + j
    double tail_bound(double t) const {
        double e = M_PI * x_phys * x_phys * t;
        if (e > 700) return 0;
        double q = std::exp(-2 * M_PI * t * x_phys);
        return kappa * std::exp(-e) / (1 - q);
    }
};

ThetaSeries build_series(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                         double t_min, bool dual) {
    ThetaSeries S;
    double x_phys = std::sqrt(kExpCut / (M_PI * t_min));

    if (spec.lattice_mode) {
        // xi Z with trivial internal space; dual lattice (1/xi) Z, weights 1
        double xi = to_double(spec.xi);
        double step = dual ? 1.0 / xi : xi;
        S.half_const = 0.5;
        S.x_phys = x_phys;
        S.covol = step;
        S.kappa = 1.0 / step + 1.0;
        long kmax = static_cast<long>(std::floor(x_phys / step));
        for (long k = 1; k <= kmax; ++k)
            S.terms.push_back({k * step, 1.0, 0.0});
        S.min_positive = step;
        return S;
    }

    ModelSetSpec ms = spec;
    double W;
    if (!dual) {
        W = w.support_radius(22.0);
        S.half_const = 0.5 * w.f0();
    } else {
        DualData dd = dual_data(K, spec);
        ms.ideal = dd.dual_basis;
        W = w.dual_support_radius(22.0);
        S.half_const = 0.5 * w.f_dual0();
    }
    ms.window.outer = BoundSpec{rational_from_double(W), Rational(0), false};
    ms.window.strict = false;
    ms.window.inner.reset();
    ms.scale = FieldElement(1);

    PointCloud cloud = enumerate_modelset(K, ms, x_phys);
    S.terms.reserve(cloud.size());
    for (const auto& p : cloud.pts) {
        if (p.value <= 0) continue;
        double wt = dual ? w.f_dual(p.conj_value) : w.f(p.conj_value);
        S.terms.push_back({p.value, wt, p.conj_value});
    }
    S.covol = std::sqrt(std::abs(to_double(ideal_disc(K, ms.ideal))));
    S.kappa = 2 * W / S.covol + 2;
    S.x_phys = x_phys;
    S.x_int = W;
    S.min_positive = S.terms.empty() ? x_phys : S.terms.front().value;
    return S;
}

}  // namespace

DualData dual_data(const QuadraticField& K, const ModelSetSpec& spec) {
    if (spec.lattice_mode) {
        DualData dd;
        dd.covolume = to_double(spec.xi);
        dd.dual_window = BoundSpec{};
        return dd;
    }
    DualData dd;
    dd.dual_basis = dual_lattice(K, spec.ideal);
    if (spec.window.outer.pi_factor)
        throw InvalidInputError("dualizing a dual window is not supported");
    // w_dual = (pi/3) / w : invert the multiplier, negate the exponent
    dd.dual_window = BoundSpec{Rational(1) / spec.window.outer.mult,
                               -spec.window.outer.unit_exp, true};
    dd.covolume = std::sqrt(std::abs(to_double(ideal_disc(K, spec.ideal))));
    return dd;
}

ModelSetSpec dual_model_set(const QuadraticField& K, const ModelSetSpec& spec, int n_shell) {
    if (n_shell < 1) throw InvalidInputError("shell index must be >= 1");
    DualData dd = dual_data(K, spec);
    ModelSetSpec out;
    out.d = spec.d;
    out.ideal = dd.dual_basis;
    out.window.outer = dd.dual_window;
    out.window.outer.mult *= n_shell;
    out.window.strict = false;  // closed outer edge
    if (n_shell > 1) {
        BoundSpec inner = dd.dual_window;
        inner.mult *= (n_shell - 1);
        out.window.inner = inner;  // open inner edge
    }
    return out;
}

double poisson_constant(const QuadraticField& K, const ModelSetSpec& spec, PoissonConstant mode) {
    double covol = spec.lattice_mode
                       ? to_double(spec.xi)
                       : std::sqrt(std::abs(to_double(ideal_disc(K, spec.ideal))));
    double c = 1.0 / covol;
    if (mode == PoissonConstant::two_pi) c *= 2 * M_PI;
    return c;
}

EvalResult theta_qc(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                    double t) {
    if (t <= 0) throw InvalidInputError("theta requires t > 0");
    ThetaSeries S = build_series(K, spec, w, t, false);
    EvalResult r;
    r.method = "theta";
    r.cutoff = S.x_phys;
    r.value = S.eval(t);
    r.error_bound = S.tail_bound(t);
    r.rigorous = true;
    return r;
}

EvalResult theta_dual(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                      double t, int n_shells, std::vector<double>* shell_contributions) {
    if (t <= 0) throw InvalidInputError("theta requires t > 0");
    ThetaSeries S = build_series(K, spec, w, t, true);

    EvalResult r;
    r.method = "theta-dual";
    r.cutoff = S.x_phys;
    r.rigorous = true;

    if (spec.lattice_mode) {
        r.value = S.eval(t);
        r.error_bound = S.tail_bound(t);
        if (shell_contributions) shell_contributions->assign(1, r.value.real() - S.half_const);
        return r;
    }

    double w_dual = dual_data(K, spec).dual_window.value(K);
    double W_needed = w.dual_support_radius(22.0);
    int shells_auto = static_cast<int>(std::ceil(W_needed / w_dual)) + 1;
    int N = (n_shells < 0) ? shells_auto : n_shells;

    KahanSum sum;
    sum.add(S.half_const);
    if (shell_contributions) shell_contributions->assign(std::max(N, 1), 0.0);
    double shell_tail = 0;
    for (const auto& tm : S.terms) {
        double e = M_PI * tm.value * tm.value * t;
        if (e > kExpCut + 20) continue;
        int shell = std::max(1, static_cast<int>(std::ceil(std::abs(tm.conj) / w_dual - 1e-12)));
        double term = tm.weight * std::exp(-e);
        if (shell <= N) {
            sum.add(term);
            if (shell_contributions) (*shell_contributions)[shell - 1] += term;
        } else {
            shell_tail += std::abs(term);  // excluded by the shell cut
        }
    }
    r.value = sum.value();
    // terms outside the enumerated internal width: at most kappa_int points per
    // unit internal length, weights below f-dual of the width
    double kappa_int = 2 * S.x_phys / S.covol + 2;
    double R_edge = std::max(static_cast<double>(N) * w_dual, S.x_int);
    double q = std::exp(-2 * M_PI * R_edge / w.c);
    double beyond = kappa_int * w.f_dual(R_edge) / std::max(1e-300, 1.0 - q);
    r.error_bound = S.tail_bound(t) + shell_tail + beyond;
    return r;
}

PoissonCheck poisson_check(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                           double t, PoissonConstant mode) {
    PoissonCheck pc;
    pc.constant = poisson_constant(K, spec, mode);
    EvalResult lhs = theta_qc(K, spec, w, t);
    EvalResult rhs = theta_dual(K, spec, w, 1.0 / t);
    pc.lhs = lhs.value.real();
    pc.rhs = pc.constant * std::pow(t, -0.5) * rhs.value.real();
    pc.lhs_bound = lhs.error_bound;
    pc.rhs_bound = pc.constant * std::pow(t, -0.5) * rhs.error_bound;
    pc.rel_err = std::abs(pc.lhs - pc.rhs) / std::abs(pc.lhs);
    pc.cutoff_primal = lhs.cutoff;
    pc.cutoff_dual = rhs.cutoff;
    return pc;
}

namespace {

Complex integral_power(const ThetaSeries& S, Complex expo, double t_max) {
    // int_1^inf (S(t) - S.half_const) t^expo dt/t, split into real/imag parts
    auto re = [&](double t) {
        double om = S.eval(t) - S.half_const;
        return om * std::pow(t, expo.real() - 1) * std::cos(expo.imag() * std::log(t));
    };
    auto im = [&](double t) {
        double om = S.eval(t) - S.half_const;
        return om * std::pow(t, expo.real() - 1) * std::sin(expo.imag() * std::log(t));
    };
    double r = integrate_to_infinity(re, 1.0, t_max, 1e-16);
    double i = (expo.imag() == 0.0) ? 0.0 : integrate_to_infinity(im, 1.0, t_max, 1e-16);
    return {r, i};
}

double integration_horizon(const ThetaSeries& S, double sigma_half) {
    double a = S.min_positive;
    double base = (kExpCut + 10 + 10 * std::max(0.0, sigma_half)) / (M_PI * a * a);
    return std::max(8.0, base);
}

}  // namespace

EvalResult lambda_completed(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                            Complex s, PoissonConstant mode, bool force_integral) {
    if (s == Complex(0, 0) || s == Complex(1, 0))
        throw ArithmeticError("Lambda has poles at s = 0 and s = 1");

    if (s.real() > 1.0 && !force_integral) {
        // Dirichlet route: pi^(-s/2) Gamma(s/2) * L_lattice(s), with the
        // mean-density tail correction of the lattice-support L
        double cutoff = 5e4;
        ModelSetSpec ms = spec;
        PointCloud cloud;
        double W = 1;
        if (!spec.lattice_mode) {
            W = w.support_radius(22.0);
            ms.window.outer = BoundSpec{rational_from_double(W + 1.0), Rational(0), false};
            ms.window.strict = false;
            ms.window.inner.reset();
        }
        cloud = enumerate_modelset(K, ms, cutoff);

        ComplexKahanSum sum;
        double X = cloud.pts.empty() ? cutoff : cloud.pts.back().value;
        // weighted counting on the back half for the density estimate
        double X0 = X / 2;
        double wsum_back = 0, wsum_q3 = 0;
        double dev_max = 0, dev_ref = 0, run = 0;
        for (const auto& p : cloud.pts) {
            if (p.value <= 0) continue;
            double chi = spec.lattice_mode ? 1.0 : w.f(p.conj_value);
            sum.add(chi * std::exp(-s * std::log(p.value)));
            if (p.value > X0) {
                wsum_back += chi;
                if (p.value > 0.75 * X) wsum_q3 += chi;
            }
        }
        double rho_f = wsum_back / (X - X0);
        double rho_f2 = wsum_q3 / (0.25 * X);
        // deviation of the weighted counting function from the linear fit
        for (const auto& p : cloud.pts) {
            if (p.value <= 0 || p.value <= X0) continue;
            double chi = spec.lattice_mode ? 1.0 : w.f(p.conj_value);
            run += chi;
            double dev = std::abs(run - rho_f * (p.value - X0));
            dev_max = std::max(dev_max, dev);
        }
        dev_ref = std::abs(rho_f - rho_f2) * X * 0.25 + dev_max;

        Complex value = sum.value();
        value += rho_f * std::exp((1.0 - s) * std::log(X)) / (s - 1.0);
        double sigma = s.real();
        double bound = std::abs(s) * (dev_ref + 1.0) * std::pow(X, -sigma) / sigma;

        Complex pref = std::pow(Complex(M_PI, 0), -s / 2.0) * gamma_complex(s / 2.0);
        EvalResult r;
        r.method = "lambda-dirichlet";
        r.cutoff = cutoff;
        r.value = pref * value;
        r.error_bound = std::abs(pref) * bound;
        r.rigorous = true;
        return r;
    }

    // integral representation (valid on all of C minus the poles)
    ThetaSeries P = build_series(K, spec, w, 1.0, false);
    ThetaSeries D = build_series(K, spec, w, 1.0, true);
    double C = poisson_constant(K, spec, mode);
    double chi0 = 2 * P.half_const, fd0 = 2 * D.half_const;

    Complex I1 = integral_power(P, s / 2.0, integration_horizon(P, s.real() / 2));
    Complex I2 = integral_power(D, (1.0 - s) / 2.0, integration_horizon(D, (1 - s.real()) / 2));
    Complex value = I1 + C * I2 + C * fd0 / (s - 1.0) - chi0 / s;

    EvalResult r;
    r.method = "lambda-integral";
    r.cutoff = P.x_phys;
    r.value = value;
    r.error_bound = 1e-12 * (1 + std::abs(value));
    r.rigorous = false;
    return r;
}

EvalResult lambda_dual(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                       Complex s, PoissonConstant mode) {
    if (s == Complex(0, 0) || s == Complex(1, 0))
        throw ArithmeticError("Lambda-dual has poles at s = 0 and s = 1");
    ThetaSeries P = build_series(K, spec, w, 1.0, false);
    ThetaSeries D = build_series(K, spec, w, 1.0, true);
    double C = poisson_constant(K, spec, mode);
    double chi0 = 2 * P.half_const, fd0 = 2 * D.half_const;

    Complex I1 = integral_power(D, s / 2.0, integration_horizon(D, s.real() / 2));
    Complex I2 = integral_power(P, (1.0 - s) / 2.0, integration_horizon(P, (1 - s.real()) / 2));
    Complex value = I1 + (1.0 / C) * I2 + (1.0 / C) * chi0 / (s - 1.0) - fd0 / s;

    EvalResult r;
    r.method = "lambda-dual-integral";
    r.cutoff = D.x_phys;
    r.value = value;
    r.error_bound = 1e-12 * (1 + std::abs(value));
    r.rigorous = false;
    return r;
}

double lambda_fe_residual(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                          Complex s, PoissonConstant mode) {
    if (s.real() <= 1.0)
        throw InvalidInputError("functional-equation residual needs Re(s) > 1 for the Dirichlet side");
    EvalResult lhs = lambda_completed(K, spec, w, s, mode);  // Dirichlet route
    EvalResult rhs = lambda_dual(K, spec, w, 1.0 - s, mode); // integral route
    double C = poisson_constant(K, spec, mode);
    return std::abs(lhs.value - C * rhs.value) / std::abs(lhs.value);
}

}  // namespace qcnt
