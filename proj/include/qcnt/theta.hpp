#pragma once

#include "qcnt/modelset.hpp"
#include "qcnt/weights.hpp"
#include "qcnt/zeta.hpp"

#include <vector>

namespace qcnt {

/// Trace-dual lattice, dual window radius (pi/3)/w, and covolume sqrt|disc A|.
struct DualData {
    IdealBasis dual_basis;
    BoundSpec dual_window;  // (pi/3) / w, carried exactly as mult/exp/pi-flag
    double covolume = 1;
};

DualData dual_data(const QuadraticField& K, const ModelSetSpec& spec);

/// Shell n of the dual model set: window ((n-1) w_dual, n w_dual] on |internal|
/// (full interval for n = 1).  Shells are pairwise disjoint and tile A-dual.
ModelSetSpec dual_model_set(const QuadraticField& K, const ModelSetSpec& spec, int n_shell);

/// Poisson constant convention.  The Gaussian transform pair used throughout
/// (f_t^ = t^(-1/2) f_(1/t)) belongs to the e^(-2 pi i x xi) kernel, whose
/// summation constant is 1/covolume; the alternative 2pi/covolume is kept
/// selectable and is never silently chosen.
enum class PoissonConstant { self_consistent, two_pi };

double poisson_constant(const QuadraticField& K, const ModelSetSpec& spec, PoissonConstant mode);

/// theta_{m,chi}(t) = 1/2 chi(0) + sum_{0<alpha in A} f_c(alpha') e^(-pi alpha^2 t).
/// The Gaussian weight performs the internal-space windowing (the sharp model
/// window only sizes the dual shells); truncation where
/// pi alpha^2 t > ~44 with a rigorous Gaussian-decay/gap tail bound.
EvalResult theta_qc(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                    double t);

/// Dual theta: sum over the first n_shells shells of the dual lattice with
/// weights f_c^(beta'); excludes the Poisson constant (chi-dual = f-dual here).
/// n_shells < 0 selects enough shells to exhaust the Gaussian support;
/// n_shells = 0 gives 1/2 f^(0).  Per-shell contributions optionally reported.
EvalResult theta_dual(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                      double t, int n_shells = -1, std::vector<double>* shell_contributions = nullptr);

struct PoissonCheck {
    double lhs = 0, rhs = 0, rel_err = 0;
    double lhs_bound = 0, rhs_bound = 0;
    double constant = 0;
    double cutoff_primal = 0, cutoff_dual = 0;
};

/// Functional-equation residual |theta(t) - C t^(-1/2) theta-dual(1/t)| / |theta(t)|.
PoissonCheck poisson_check(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                           double t, PoissonConstant mode = PoissonConstant::self_consistent);

/// Completed Lambda(m, chi, s) = pi^(-s/2) Gamma(s/2) L(m, chi, s).
/// Re(s) > 1: Dirichlet route (lattice-support L with mean-density tail
/// correction); otherwise the Mellin integral representation
///   int_1^inf omega t^(s/2-1) + C int_1^inf omega-dual t^((1-s)/2-1)
///   + C f^(0)/(s-1) - chi(0)/s.
/// force_integral selects the integral route everywhere it converges.
EvalResult lambda_completed(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                            Complex s, PoissonConstant mode = PoissonConstant::self_consistent,
                            bool force_integral = false);

/// Dual completed function Lambda-dual; integral representation.
EvalResult lambda_dual(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                       Complex s, PoissonConstant mode = PoissonConstant::self_consistent);

/// |Lambda(s) - C Lambda-dual(1-s)| / |Lambda(s)| with Lambda(s) on the
/// Dirichlet route (Re(s) > 1 required) and Lambda-dual on the integral route,
/// so the residual genuinely exercises the functional equation.
double lambda_fe_residual(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                          Complex s, PoissonConstant mode = PoissonConstant::self_consistent);

}  // namespace qcnt
