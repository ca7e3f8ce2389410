#include "qcnt/errors.hpp"
#include "qcnt/zeta.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qcnt;

namespace {

// frozen classical values
const double kZeta4 = 1.0823232337111381915;   // pi^4/90
const double kZeta6 = 1.0173430619844491397;   // pi^6/945
const double kZetaHalf = -1.4603545088095868;  // zeta(1/2)

PointCloud lattice_cloud(double range) {
    QuadraticField K = make_field(5);  // unused in lattice mode
    return enumerate_modelset(K, ModelSetSpec::lattice(), range);
}

}  // namespace

TEST_CASE("direct sums against closed forms") {
    PointCloud z = lattice_cloud(20000);
    EvalResult r4 = zeta_direct(z, Complex(4, 0));
    CHECK(std::abs(r4.value.real() - kZeta4) <= r4.error_bound);
    CHECK(r4.error_bound < 1e-10);
    EvalResult r6 = zeta_direct(z, Complex(6, 0));
    CHECK(std::abs(r6.value.real() - kZeta6) <= r6.error_bound);
    CHECK(r6.rigorous);

    PointCloud empty;
    empty.range_max = 1;
    EvalResult re = zeta_direct(empty, Complex(2, 0));
    CHECK(re.value == Complex(0, 0));
    CHECK(re.error_bound == 0);

    CHECK_THROWS_AS(zeta_direct(z, Complex(1.0, 0)), ArithmeticError);
    CHECK_THROWS_AS(zeta_direct(z, Complex(0.5, 0)), ArithmeticError);
}

TEST_CASE("continued evaluation") {
    PointCloud z = lattice_cloud(100000);
    EvalResult rh = zeta_continued(z, Complex(0.5, 0));
    CHECK(std::abs(rh.value.real() - kZetaHalf) <= rh.error_bound);

    EvalResult r4 = zeta_continued(z, Complex(4, 0));
    CHECK(std::abs(r4.value.real() - kZeta4) < 1e-10);
    EvalResult r6 = zeta_continued(z, Complex(6, 0));
    CHECK(std::abs(r6.value.real() - kZeta6) < 1e-10);

    CHECK_THROWS_AS(zeta_continued(z, Complex(1, 0)), ArithmeticError);
    CHECK_THROWS_AS(zeta_continued(z, Complex(-0.5, 0)), ArithmeticError);

    // the formula is x-independent: pinning x mid-cloud exercises the
    // closed-form inter-point integrals
    EvalResult mid = zeta_continued(z, Complex(0.5, 0), 50000);
    CHECK(std::abs(mid.value.real() - rh.value.real()) <= mid.error_bound + rh.error_bound);
}

TEST_CASE("continuation is split-point independent") {
    // the closed-form interval integrals make the formula independent of the
    // free split point x; disagreement here is how a wrong fractional-part
    // convention would first show up
    QuadraticField K = make_field(5);
    ModelSetSpec spec = ModelSetSpec::unit_power_ideal(5, Rational(0), false);
    PointCloud c = enumerate_modelset(K, spec, 30000.0);
    for (double sr : {0.5, 1.5, 3.0}) {
        EvalResult ref = zeta_continued(c, Complex(sr, 0));
        for (long idx : {100L, 2000L, 15000L}) {
            EvalResult r = zeta_continued(c, Complex(sr, 0), idx);
            CHECK(std::abs(r.value - ref.value) <= r.error_bound + ref.error_bound);
        }
    }
}

TEST_CASE("direct and continued methods agree on random s") {
    QuadraticField K = make_field(5);
    ModelSetSpec spec = ModelSetSpec::unit_power_ideal(5, Rational(0), false);
    PointCloud c = enumerate_modelset(K, spec, 20000.0);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> re(1.1, 6.0), im(-3.0, 3.0);
    for (int i = 0; i < 10; ++i) {
        Complex s{re(rng), im(rng)};
        EvalResult d = zeta_direct(c, s);
        EvalResult k = zeta_continued(c, s);
        CHECK(std::abs(d.value - k.value) <= d.error_bound + k.error_bound);
    }
}

TEST_CASE("simple pole at s = 1 with residue the density") {
    QuadraticField K = make_field(5);
    ModelSetSpec spec = ModelSetSpec::unit_power_ideal(5, Rational(0), false);
    PointCloud c = enumerate_modelset(K, spec, 200000.0);
    double probes[] = {1e-3, 1e-4};
    std::vector<double> residues;
    for (double eps : probes) {
        for (double sgn : {1.0, -1.0}) {
            Complex s{1.0 + sgn * eps, 0.0};
            EvalResult r = zeta_continued(c, s);
            residues.push_back((s.real() - 1.0) * r.value.real());
        }
    }
    for (double r : residues) {
        CHECK(std::abs(r - residues[0]) / std::abs(residues[0]) < 0.01);
        // residue of the zeta of a model set is its density
        CHECK(std::abs(r - 2.0 / std::sqrt(5.0)) < 0.01);
    }
}

TEST_CASE("scaling covariance") {
    QuadraticField K = make_field(5);
    ModelSetSpec spec = ModelSetSpec::unit_power_ideal(5, Rational(0), false);
    ModelSetSpec scaled = spec;
    scaled.scale = FieldElement(2L);
    PointCloud a = enumerate_modelset(K, spec, 3000.0);
    PointCloud b = enumerate_modelset(K, scaled, 6000.0);
    for (double sr : {2.0, 3.5, 5.0}) {
        Complex s{sr, 0};
        EvalResult za = zeta_direct(a, s);
        EvalResult zb = zeta_direct(b, s);
        double expect = std::pow(2.0, -sr) * za.value.real();
        CHECK(std::abs(zb.value.real() - expect) <=
              std::pow(2.0, -sr) * za.error_bound + zb.error_bound);
    }
}

TEST_CASE("any Delaunay set converges with a valid tail bound") {
    // deterministic jittered lattice with min gap enforced
    PointCloud c;
    c.range_max = 50000;
    for (long k = 1; k <= 50000; ++k) {
        double jitter = 0.3 * std::sin(static_cast<double>(k) * 12.9898);
        Point p;
        p.el = FieldElement(Rational(k), Rational(0));
        p.value = k + jitter;
        p.conj_value = 0;
        c.pts.push_back(p);
    }
    c.derived = true;
    double rmin = 1e300, gmax = 0;
    for (size_t i = 1; i < c.pts.size(); ++i) {
        double g = c.pts[i].value - c.pts[i - 1].value;
        rmin = std::min(rmin, g);
        gmax = std::max(gmax, g);
    }
    REQUIRE(rmin > 0.3);
    c.r_min = rmin;
    c.gap_max = gmax;
    c.density_est = static_cast<double>(c.pts.size()) / c.range_max;

    PointCloud half = c;
    half.pts.resize(25000);
    half.range_max = half.pts.back().value;
    half.density_est = 25000.0 / half.range_max;
    half.gap_max = gmax;

    EvalResult full = zeta_direct(c, Complex(2, 0));
    EvalResult part = zeta_direct(half, Complex(2, 0));
    CHECK(std::abs(full.value.real() - part.value.real()) <=
          full.error_bound + part.error_bound);
}

TEST_CASE("deep continuation hits the classical negative values") {
    PointCloud z = lattice_cloud(100000);
    EvalResult r1 = zeta_deep(z, Complex(-1, 0), 3);
    CHECK(std::abs(r1.value.real() - (-1.0 / 12.0)) < 1e-6);
    CHECK_FALSE(r1.rigorous);
    EvalResult r3 = zeta_deep(z, Complex(-3, 0), 4);
    CHECK(std::abs(r3.value.real() - (1.0 / 120.0)) < 1e-4);

    CHECK_THROWS_AS(zeta_deep(z, Complex(0.5, 0), 5), InvalidInputError);
    CHECK_THROWS_AS(zeta_deep(z, Complex(-4.5, 0), 4), ArithmeticError);
}

TEST_CASE("deep agrees with continued on the overlap strip") {
    QuadraticField K = make_field(5);
    ModelSetSpec spec = ModelSetSpec::unit_power_ideal(5, Rational(0), false);
    PointCloud c = enumerate_modelset(K, spec, 50000.0);
    for (double sr : {0.25, 0.5, 0.8}) {
        EvalResult deep = zeta_deep(c, Complex(sr, 0), 3);
        EvalResult cont = zeta_continued(c, Complex(sr, 0));
        CHECK(std::abs(deep.value - cont.value) <=
              10 * (deep.error_bound + cont.error_bound));
    }
}

TEST_CASE("a-Bernoulli numbers") {
    PointCloud z = lattice_cloud(100000);
    EvalResult b1 = bernoulli_qc(z, 1);
    CHECK(std::abs(b1.value.real() - (-1.0 / 12.0)) < 1e-6);
    EvalResult b3 = bernoulli_qc(z, 3);
    CHECK(std::abs(b3.value.real() - (1.0 / 120.0)) < 1e-4);
    CHECK_THROWS_AS(bernoulli_qc(z, 2), InvalidInputError);
    CHECK_THROWS_AS(bernoulli_qc(z, 5), InvalidInputError);

    // d=5: finite value with an honest (non-shrinking) heuristic bound: the
    // iterated antiderivative means of the golden ring drift log-periodically,
    // so cutoff growth must stay within the reported uncertainties
    QuadraticField K = make_field(5);
    ModelSetSpec spec = ModelSetSpec::unit_power_ideal(5, Rational(0), false);
    PointCloud c1 = enumerate_modelset(K, spec, 50000.0);
    PointCloud c2 = enumerate_modelset(K, spec, 130901.7);  // x phi^4
    EvalResult e1 = bernoulli_qc(c1, 1);
    EvalResult e2 = bernoulli_qc(c2, 1);
    CHECK(std::isfinite(e1.value.real()));
    CHECK_FALSE(e1.rigorous);
    CHECK(std::abs(e1.value.real() - e2.value.real()) <=
          2 * (e1.error_bound + e2.error_bound));
}

TEST_CASE("weighted L-functions") {
    QuadraticField K = make_field(5);

    // lattice mode: trivial internal space, so f_1 weights are all 1
    ModelSetSpec lat = ModelSetSpec::lattice();
    EvalResult r = l_function(K, lat, WeightSpec{1.0}, Complex(4, 0), 20000.0);
    CHECK(std::abs(r.value.real() - kZeta4) <= r.error_bound);

    // c -> 0 (clamped): the weight is 1 on the window, reproducing zeta_direct
    ModelSetSpec spec = ModelSetSpec::unit_power_ideal(5, Rational(0), false);
    PointCloud c = enumerate_modelset(K, spec, 5000.0);
    EvalResult lw = l_function(K, spec, WeightSpec{1e-9}, Complex(4, 0), 5000.0);
    EvalResult zd = zeta_direct(c, Complex(4, 0));
    CHECK(std::abs(lw.value.real() - zd.value.real()) < 1e-6);

    // positive Gaussian weights sit below the plain zeta
    EvalResult l1 = l_function(K, spec, WeightSpec{1.0}, Complex(4, 0), 5000.0);
    CHECK(l1.value.real() > 0);
    CHECK(l1.value.real() < zd.value.real());

    CHECK_THROWS_AS(l_function(K, spec, WeightSpec{1.0}, Complex(0.5, 0), 100.0),
                    ArithmeticError);
}
