#pragma once

#include "qcnt/modelset.hpp"
#include "qcnt/zeta.hpp"

#include <optional>
#include <vector>

namespace qcnt {

/// J = zeta(6)^2 / zeta(4)^3 (the scale-invariant ratio) and
/// j = prefactor / (1 - (49/40) J); j_infinite set when the denominator
/// vanishes within the propagated zeta bounds.
struct JInvariant {
    double J = 0;
    double j = 0;
    bool j_infinite = false;
    double J_bound = 0;  // propagated from the two zeta tail bounds
};

/// Prefactor convention for j: 12^3 in j(a), 12 in the quantum j_eps family.
/// J-level comparisons are prefactor-free either way.
enum class JPrefactor { cube = 0, twelve = 1 };

JInvariant j_invariant(const PointCloud& cloud, JPrefactor pref = JPrefactor::cube);

/// Diophantine approximation set  Lambda_eps(theta) = { 0 < n <= n_max : ||n theta|| < eps },
/// double path with certified high-precision escalation near the boundary.
std::vector<long> lambda_eps(double theta, double eps, long n_max);

/// Exact variant for eps = theta^(-x), x = p/q rational: the comparison
/// ||n theta||^q < theta^(-p) is decided in the field.
std::vector<long> lambda_eps_exact(const QuadraticField& K, const Rational& x, long n_max);

struct QuantumJStep {
    double eps;
    Rational eps_exponent;  // eps = theta^(-exponent) when exact
    JInvariant inv;
    size_t lambda_count = 0;
    double zeta4 = 0, zeta6 = 0;
};

/// zeta_{theta,eps}(s) over Lambda_eps and the associated (J_eps, j_eps).
QuantumJStep j_eps(const QuadraticField& K, const Rational& x, long n_max,
                   JPrefactor pref = JPrefactor::twelve);

struct PinkReport {
    Rational x;
    std::vector<long> m_values;
    // set part
    std::vector<double> hausdorff;      // distance on [delta, R - delta]
    std::vector<double> decay_ratios;   // hausdorff[i+1] / hausdorff[i]
    std::vector<size_t> scaled_counts;
    size_t target_count = 0;
    double range = 0;
    double edge_buffer = 0;
    // value part
    std::vector<double> J_eps;
    std::vector<double> value_gaps;     // |J_eps[m] - J_target|
    double J_target = 0;
    std::optional<double> J_target_closed;  // when the window boundary is attained
};

/// Scaled-set convergence (Delta/theta^m) Lambda_{x+m} -> a_x on [0, R]:
/// two-sided Hausdorff distance on [delta, R-delta], delta = 2 gap_max.
PinkReport pink_set_check(const QuadraticField& K, const Rational& x, long m_min, long m_max,
                          double range);

/// Value convergence J_{theta^-(x+m)}(theta) -> J(a_x); comparisons at the
/// prefactor-free J level.
PinkReport pink_value_check(const QuadraticField& K, const Rational& x, long m_max, long n_max);

/// Scaled set (Delta/theta^m) Lambda_{x+m} as doubles (for reports/CSV).
std::vector<double> pink_scaled_set(const QuadraticField& K, const Rational& x, long m,
                                    double range);

}  // namespace qcnt
