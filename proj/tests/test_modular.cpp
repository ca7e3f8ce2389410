#include "qcnt/errors.hpp"
#include "qcnt/modular.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace qcnt;

namespace {

PointCloud golden_cloud(double range, const Rational& x = Rational(0), bool strict = true) {
    QuadraticField K = make_field(5);
    return enumerate_modelset(K, ModelSetSpec::unit_power_ideal(5, x, strict), range);
}

}  // namespace

TEST_CASE("lattice J approaches 40/49 and j diverges") {
    QuadraticField K = make_field(5);
    PointCloud z = enumerate_modelset(K, ModelSetSpec::lattice(), 30000.0);
    JInvariant inv = j_invariant(z);
    CHECK(std::abs(inv.J - 40.0 / 49.0) < 1e-8);
    CHECK(inv.j_infinite);  // (49/40) J -> 1
}

TEST_CASE("J is scale invariant under exact rational scaling") {
    QuadraticField K = make_field(5);
    ModelSetSpec spec = ModelSetSpec::unit_power_ideal(5, Rational(0), false);
    ModelSetSpec doubled = spec;
    doubled.scale = FieldElement(2L);
    PointCloud a = enumerate_modelset(K, spec, 2000.0);
    PointCloud b = enumerate_modelset(K, doubled, 4000.0);
    JInvariant ja = j_invariant(a), jb = j_invariant(b);
    CHECK(std::abs(ja.J - jb.J) < 1e-8);
}

TEST_CASE("diophantine approximation sets") {
    double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(lambda_eps(phi, 0.2, 8) == std::vector<long>{3, 5, 8});
    CHECK_THROWS_AS(lambda_eps(phi, 0.5, 10), InvalidInputError);
    CHECK_THROWS_AS(lambda_eps(phi, 0.7, 10), InvalidInputError);

    // nesting: eps' < eps implies containment
    auto big = lambda_eps(phi, 0.2, 500);
    auto small = lambda_eps(phi, 0.05, 500);
    CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));

    // exact path against the double path at eps = phi^-8.  The double path
    // cannot represent the algebraic boundary ||21 phi|| = phi^-8, so the two
    // routes may only differ at n = 21 (which the strict exact path excludes).
    QuadraticField K = make_field(5);
    auto exact = lambda_eps_exact(K, Rational(8), 2000);
    double eps8 = std::pow(phi, -8.0);
    auto dbl = lambda_eps(phi, eps8, 2000);
    std::vector<long> dbl_no21, exact_no21;
    std::copy_if(dbl.begin(), dbl.end(), std::back_inserter(dbl_no21),
                 [](long n) { return n != 21; });
    std::copy_if(exact.begin(), exact.end(), std::back_inserter(exact_no21),
                 [](long n) { return n != 21; });
    CHECK(exact_no21 == dbl_no21);
    CHECK(std::find(exact.begin(), exact.end(), 21) == exact.end());

    // Fibonacci structure: ||n phi|| < phi^-8 forces the smallest Zeckendorf
    // part of n above F_7 = 13 (the non-adjacent remainder tail cannot cancel
    // a phi^-k term below index 7)
    std::vector<long> fibs = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1597};
    for (long n : exact) {
        long rest = n;
        long smallest = 1L << 30;
        while (rest > 0) {
            auto it = std::upper_bound(fibs.begin(), fibs.end(), rest);
            --it;
            smallest = std::min(smallest, *it);
            rest -= *it;
        }
        CHECK(smallest >= 13);
    }
}

TEST_CASE("undecidable boundaries raise a precision error") {
    // theta = 1/4 exactly: ||2 * theta|| = 1/2... use n=1: ||0.25|| = 0.25 = eps
    CHECK_THROWS_AS(lambda_eps(0.25, 0.25, 4), PrecisionError);
}

TEST_CASE("exact boundary decisions in lambda_eps_exact") {
    // ||F_k phi|| = phi^-k exactly: with eps = phi^-8 strict, F_8 = 21 is
    // excluded (boundary attained) while F_9, F_10, ... are included
    QuadraticField K = make_field(5);
    auto lam = lambda_eps_exact(K, Rational(8), 100);
    CHECK(std::find(lam.begin(), lam.end(), 21) == lam.end());
    CHECK(std::find(lam.begin(), lam.end(), 34) != lam.end());
    CHECK(std::find(lam.begin(), lam.end(), 55) != lam.end());
}

TEST_CASE("quantum j steps") {
    QuadraticField K = make_field(5);
    QuantumJStep st = j_eps(K, Rational(8), 100000);
    CHECK(st.inv.J > 0);
    CHECK(std::isfinite(st.inv.j));
    CHECK(st.lambda_count > 1000);

    // termwise monotonicity: smaller eps gives smaller zeta values
    QuantumJStep tighter = j_eps(K, Rational(9), 100000);
    CHECK(tighter.zeta4 <= st.zeta4);
    CHECK(tighter.zeta6 <= st.zeta6);

    // an empty approximation set: tiny eps, small n_max forces emptiness
    // (completeness guard would reject a small n_max, so test via j_eps
    // internals: eps = phi^-25 has no n <= 2200)
    auto lam = lambda_eps_exact(K, Rational(25), 2200);
    CHECK(lam.empty());
}

TEST_CASE("pink scaled-set convergence") {
    QuadraticField K = make_field(5);
    PinkReport rep = pink_set_check(K, Rational(0), 3, 8, 50.0);
    REQUIRE(rep.hausdorff.size() == 6);
    // distances decrease with per-step ratio near phi^-2 ~ 0.382
    for (double ratio : rep.decay_ratios) {
        CHECK(ratio > 0.25);
        CHECK(ratio < 0.55);
    }
    // element counts of the scaled sets match the target for m >= 4
    for (size_t i = 0; i < rep.m_values.size(); ++i) {
        if (rep.m_values[i] >= 4) CHECK(rep.scaled_counts[i] == rep.target_count);
    }
    // m = 0: finite distance bounded by the range (degenerate all-integers set)
    PinkReport m0 = pink_set_check(K, Rational(0), 0, 0, 50.0);
    CHECK(m0.hausdorff[0] <= 50.0);
    CHECK(m0.hausdorff[0] > 0);
}

TEST_CASE("pink value convergence") {
    QuadraticField K = make_field(5);
    PinkReport rep = pink_value_check(K, Rational(0), 8, 100000);
    REQUIRE(rep.value_gaps.size() == 7);  // m = 1 is degenerate for theta = phi
    CHECK(rep.value_gaps.back() < 1e-3);
    // the closed-window target also exists at integer x (boundary attained),
    // and the scaled sets converge to the strict member of the pair: the gap
    // to the closed target stays two orders of magnitude wider
    CHECK(rep.J_target_closed.has_value());
    CHECK(*rep.J_target_closed != rep.J_target);
    CHECK(std::abs(rep.J_eps.back() - *rep.J_target_closed) >
          100 * rep.value_gaps.back());

    // x and x + 1 give theta-scaled ideals, hence equal J targets
    PointCloud c0 = golden_cloud(1500.0, Rational(0));
    PointCloud c1 = golden_cloud(1500.0, Rational(1));
    JInvariant j0 = j_invariant(c0), j1 = j_invariant(c1);
    CHECK(std::abs(j0.J - j1.J) < 1e-6);
}

TEST_CASE("J continuity from the right") {
    // |J(a_x) - J(a_x')| -> 0 as x' -> x+ through geometric steps at x = 0.3
    QuadraticField K = make_field(5);
    JInvariant base = j_invariant(golden_cloud(2000.0, Rational(3, 10)));
    std::vector<double> gaps;
    for (int k : {0, 1, 2, 3, 4}) {
        Rational xp = Rational(3, 10) + Rational(1, 10) / (1 << k);
        JInvariant jk = j_invariant(golden_cloud(2000.0, xp));
        gaps.push_back(std::abs(jk.J - base.J));
    }
    CHECK(gaps.back() < gaps.front());
    CHECK(gaps.back() < 0.05 * std::abs(base.J) + 1e-6);
}

TEST_CASE("pink rejects bad inputs") {
    QuadraticField K = make_field(5);
    CHECK_THROWS_AS(pink_set_check(K, Rational(3, 2), 1, 3, 20.0), InvalidInputError);
    CHECK_THROWS_AS(pink_value_check(K, Rational(-1, 2), 3, 1000), InvalidInputError);
    QuadraticField K7 = make_field(7);
    CHECK_THROWS_AS(pink_set_check(K7, Rational(0), 1, 3, 20.0), InvalidInputError);
}
