#pragma once

#include "qcnt/modelset.hpp"
#include "qcnt/weights.hpp"

#include <string>

namespace qcnt {

/// Value with an error bound.  rigorous == true means the bound comes from a
/// tail formula; otherwise it is a heuristic estimate (deep continuation).
struct EvalResult {
    Complex value{0, 0};
    double error_bound = 0;
    bool rigorous = true;
    std::string method;
    double cutoff = 0;
};

/// zeta_a(s) = sum alpha^(-s) over positive points, ascending compensated sum.
/// Requires Re(s) > 1.  Tail bound:
///   density * X^(1-sigma) / (sigma-1) * (1 + gap_max * density).
EvalResult zeta_direct(const PointCloud& cloud, Complex s);

/// Riemann-Stieltjes continuation to Re(s) > 0, s != 1:
///   zeta(s) = sum_{alpha<=x} alpha^-s + x^(1-s)/(s-1) + {x}x^-s
///             - s int_x^inf {u} u^(-s-1) du,
/// the integral in closed form on enumerated inter-point intervals, the
/// remainder replaced by its fractional-part-mean value with a rigorous
/// enclosure half-width  |s| max(mean, gap-mean) X^(-sigma) / sigma.
/// x defaults to the largest enumerated point; any cloud point works (the
/// formula is x-independent), which the tests exercise.
EvalResult zeta_continued(const PointCloud& cloud, Complex s, long x_index = -1);

/// k-fold iterated integration by parts with empirically mean-corrected
/// antiderivatives; valid for Re(s) > -k, s != 1, k <= 4.  Heuristic bound
/// (mean uncertainties + first dropped term); flagged non-rigorous.
EvalResult zeta_deep(const PointCloud& cloud, Complex s, int k, double x_target = 0);

/// a-Bernoulli number B_{a,n} = zeta_a(-n), n in {1, 3}; experimental.
EvalResult bernoulli_qc(const PointCloud& cloud, int n);

enum class WeightSupport {
    window,   // sum over the model set itself: L(m, chi, s)
    lattice,  // sum over the full ideal, Gaussian weight only (theta/Lambda route)
};

/// L(m, chi, s) = sum chi(alpha) alpha^(-s), chi(alpha) = f_c(alpha').
/// Re(s) > 1.  The lattice-support variant is the Dirichlet series whose
/// completion satisfies the exact functional equation.
EvalResult l_function(const QuadraticField& K, const ModelSetSpec& spec, const WeightSpec& w,
                      Complex s, double cutoff, WeightSupport support = WeightSupport::window);

}  // namespace qcnt
