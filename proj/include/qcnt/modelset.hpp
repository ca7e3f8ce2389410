#pragma once

#include "qcnt/field.hpp"
#include "qcnt/ideal.hpp"
#include "qcnt/window.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qcnt {

/// Cut-and-project description of a rank-1 quasicrystalline ring/ideal:
/// points { sigma1(gamma*alpha) : alpha in A, sigma2(alpha) in window }.
///
/// Degenerate lattice mode replaces the whole construction by xi*Z (vacuous
/// internal constraint); it exists so the classical zeta/theta/Wallis
/// identities act as exact oracles for the analytic pipeline.
struct ModelSetSpec {
    bool lattice_mode = false;
    Rational xi = 1;  // lattice mode spacing

    long d = 0;
    IdealBasis ideal;
    Window window;
    FieldElement scale{1};  // gamma, for classes gamma*a; sigma1(gamma) > 0

    static ModelSetSpec lattice(Rational spacing = Rational(1));
    /// a_x(theta) over O_K: window radius theta^-x, strict or closed.
    static ModelSetSpec unit_power_ideal(long d, const Rational& x, bool strict);
};

struct Point {
    FieldElement el;
    double value = 0;
    double conj_value = 0;
};

/// Sorted finite truncation of a model set with Delaunay statistics.
struct PointCloud {
    std::vector<Point> pts;  // strictly increasing value
    double range_max = 0;
    bool signed_range = false;
    double r_min = 0;
    double gap_max = 0;
    double density_est = 0;
    double exact_density = 0;  // cut-and-project density; 0 when unknown (derived clouds)
    ModelSetSpec spec;
    bool derived = false;   // product/sumset output: spec is the left input's
    std::string note;

    size_t size() const { return pts.size(); }
    bool empty() const { return pts.empty(); }
    /// Smallest positive value (throws if none).
    double min_positive() const;
};

struct EnumerateOptions {
    std::uint64_t point_cap = 8'000'000;
};

/// Complete enumeration of the truncation:
///   unsigned: 0 < sigma1 <= range_max;  signed: |sigma1| <= range_max (0 included).
/// Completeness comes from slab iteration over the internal/physical box; every
/// candidate is accepted or rejected by an exact (or certified) test.
PointCloud enumerate_modelset(const QuadraticField& K, const ModelSetSpec& spec,
                              double range_max, bool signed_range = false,
                              const EnumerateOptions& opts = {});

/// (r_min, gap_max) of consecutive points; throws on fewer than 2 points.
std::pair<double, double> delaunay_stats(const PointCloud& cloud);

/// Exact cut-and-project density: window length / covolume (1/xi in lattice
/// mode), divided by the scale multiplier.
double model_density(const QuadraticField& K, const ModelSetSpec& spec);

/// All pairwise products with value <= range_max, deduplicated exactly.
/// Requires inputs complete past range_max / min(other); throws
/// CompletenessError with the needed range otherwise.
PointCloud monoid_product(const QuadraticField& K, const PointCloud& a, const PointCloud& b,
                          double range_max);

/// All pairwise sums landing in (0, range_max], deduplicated exactly.
/// Inputs must be signed enumerations; the required input range is
/// range_max + sum_buffer (representations can cancel).
PointCloud sumset(const QuadraticField& K, const PointCloud& a, const PointCloud& b,
                  double range_max);

/// Conservative input range for sumset completeness on (0, range_max].
double sumset_required_range(const QuadraticField& K, const ModelSetSpec& a,
                             const ModelSetSpec& b, double range_max);

/// a * b = M(A*B, D*D'): ideal product, window radii multiply.  The result
/// window is strict when either factor is strict (the product of an open and
/// a closed interval is open).
ModelSetSpec star_product(const QuadraticField& K, const ModelSetSpec& a, const ModelSetSpec& b);

/// theta^k * spec: ideal scaled by theta^k, window radius by theta^-k; the
/// resulting point set is exactly theta^k times the original.
ModelSetSpec scale_by_unit(const QuadraticField& K, const ModelSetSpec& spec, long k);

/// chi(a) = 1 iff some integer b puts a*theta + b inside the window; decided
/// exactly.  Requires Z[theta] = O_K and window exponent x >= 0.
std::vector<bool> coding_function(const QuadraticField& K, const ModelSetSpec& spec, long a_max);

/// Extension map Phi: the O_K-ideal generated by the model set, i.e. gamma*A.
IdealBasis extend_to_ideal(const QuadraticField& K, const ModelSetSpec& spec);

/// CSV: m,n (exact integer coordinates on the ideal basis), value, conj_value.
void cloud_to_csv(std::ostream& os, const QuadraticField& K, const PointCloud& cloud);

/// Exact integer coordinates of a point on gamma*(ideal basis).
std::pair<BigInt, BigInt> basis_coordinates(const QuadraticField& K, const ModelSetSpec& spec,
                                            const FieldElement& el);

}  // namespace qcnt
