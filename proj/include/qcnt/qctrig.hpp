#pragma once

#include "qcnt/modelset.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace qcnt {

/// Positive zeros of the absolute sine (the point set) and cosine (computed),
/// with the generalized Wallis constant once pi_qc has run.
struct TrigTables {
    std::vector<double> alphas;  // positive points, ascending
    std::vector<double> betas;   // interlaced cosine zeros: 0 < b1 < a1 < b2 < ...
    bool lattice = false;        // exact half-integer zero identities apply
    double xi = 1;               // lattice spacing
    double density = 0;
    double mean_gap = 1;
    double gap_max = 0;
    double pi_value = 0;         // 0 until pi_qc fills it
    double pi_convergence = 0;
    size_t pi_terms = 0;
};

/// Value plus a relative-error estimate (tail-corrected truncated products).
struct TrigValue {
    double value = 0;
    double rel_error = 0;
};

TrigTables build_trig_tables(const PointCloud& cloud);

/// Lattice tables xi*Z with analytic cosine zeros xi*(k - 1/2); the generic
/// bisection path is available on these tables via ZeroMethod::bisection and
/// is cross-checked against the analytic values in the tests.
TrigTables build_trig_tables_lattice(const Rational& xi, size_t count);

enum class ZeroMethod { automatic, bisection };

/// Locate cosine zeros 1..n by bisection on the logarithmic derivative of the
/// sine product (strictly decreasing on each gap), Newton-polished.  Throws
/// NumericError if a gap fails to bracket a sign change (interlacing
/// violation).  Lattice tables use the exact half-integer zeros unless
/// bisection is forced.
void cos_zeros(TrigTables& tables, size_t n, ZeroMethod method = ZeroMethod::automatic);

/// Absolute sine s(x) = x prod (1 - x^2/a^2), truncated at the table range
/// with the log-tail correction exp(-x^2 T2 - x^4 T4 / 2) estimated from the
/// point density (exact Gamma-ratio tails in lattice mode).
/// Requires |x| <= 0.1 * (table range).
TrigValue s_abs(const TrigTables& tables, double x);

/// Absolute cosine c = s'; logarithmic-derivative form away from the sine
/// zeros, deflated product within 1e-6 of a zero.
TrigValue c_abs(const TrigTables& tables, double x);

/// Generalized Wallis constant pi_a = (1/b1) prod a_n^2 / (b_n b_{n+1});
/// fills tables.pi_value and returns (value, |P_N - P_{N/2}| estimate).
TrigValue pi_qc(TrigTables& tables, size_t n_terms);

/// Normalized sine/cosine of pi_a z (complex z allowed).
std::pair<Complex, Complex> trig_normalized(TrigTables& tables, Complex z);

/// e(ix) = c(x) + i s(x); normalized variant uses cos/sin of pi_a x.
Complex exp_qc(TrigTables& tables, double x, bool normalized = false);

struct CurveSample {
    double x;
    Complex z;
};

std::vector<CurveSample> curve_samples(TrigTables& tables, double x_min, double x_max, size_t n,
                                       bool normalized = false);

/// Single-polyline SVG of the curve, viewBox fitted to the data.
std::string curve_svg(const std::vector<CurveSample>& samples);

struct PhasePairResult {
    bool found = false;   // a tangent partner was located
    double partner = 0;   // y != x with tan(y) = tan(x)
    double residual = 0;  // |t(gamma x) - t(gamma y)| / local derivative scale
};

/// U(1) phase action check: find y in the next branches with t(y) = t(x),
/// then measure |t(gamma x) - t(gamma y)|.  Inconclusive searches return
/// found = false (not a failure).
PhasePairResult phase_pair_check(TrigTables& tables, double gamma_value, double x);

}  // namespace qcnt
