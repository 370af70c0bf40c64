#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hspsim/exp_sums.hpp"
#include "hspsim/sampling.hpp"

using namespace hspsim;
using doctest::Approx;

TEST_CASE("complete Gauss sum degenerate values") {
    for (u64 p : {23ULL, 103ULL}) {
        CHECK(std::abs(gauss_sum({p, 0, 0}) - cplx(static_cast<double>(p - 1), 0)) < 1e-9);
        for (u64 s : {u64{1}, u64{7}, p - 1})
            CHECK(std::abs(gauss_sum({p, s, 0}) - cplx(-1, 0)) < 1e-9);
        for (u64 t : {u64{1}, u64{5}, p - 2})
            CHECK(std::abs(gauss_sum({p, 0, t})) < 1e-9);
    }
}

TEST_CASE("complete Gauss sum modulus sqrt(p) for nontrivial pairs") {
    u64 p = 23;
    for (u64 s = 1; s < p; ++s)
        for (u64 t = 1; t < p - 1; ++t)
            CHECK(std::abs(gauss_sum({p, s, t})) == Approx(std::sqrt(23.0)).epsilon(1e-12));

    // Frozen constants (computed independently with mpmath at 30 digits).
    auto v = gauss_sum({13, 2, 3});
    CHECK(v.real() == Approx(1.04483160691281543).epsilon(1e-12));
    CHECK(v.imag() == Approx(3.4508443768440187282).epsilon(1e-12));
    CHECK(std::abs(gauss_sum({103, 5, 7})) == Approx(10.148891565092219469).epsilon(1e-12));
}

TEST_CASE("incomplete Gauss sum") {
    SUBCASE("full multiplicative group gives -1") {
        for (u64 p : {13ULL, 103ULL}) {
            u64 gamma = primitive_root(p);
            for (u64 t : {u64{1}, u64{4}})
                CHECK(std::abs(incomplete_gauss_sum(t, gamma, p) - cplx(-1, 0)) < 1e-9);
        }
    }
    SUBCASE("frozen value, p=103, a of order 51, t=1") {
        u64 a = mod_pow(5, 2, 103);
        auto v = incomplete_gauss_sum(1, a, 103);
        CHECK(v.real() == Approx(-0.5).epsilon(1e-12));
        CHECK(v.imag() == Approx(5.0744457825461097343).epsilon(1e-12));
    }
    SUBCASE("two code paths agree") {
        for (u64 p : {103ULL, 1019ULL}) {
            u64 gamma = primitive_root(p);
            for (auto [f, m] : factorize(p - 1)) {
                (void)m;
                u64 a = mod_pow(gamma, (p - 1) / f, p);
                for (u64 t : {u64{1}, u64{17}}) {
                    auto x = incomplete_gauss_sum(t, a, p);
                    auto y = incomplete_gauss_sum_direct(t, a, p);
                    CHECK(std::abs(x - y) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("total variation utilities") {
    OutcomeDistribution point({"x"}), unif({"x"});
    for (i64 v = 0; v < 10; ++v) unif.add({v}, 0.1);
    point.add({0}, 1.0);
    CHECK(total_variation(point, unif) == Approx(0.9).epsilon(1e-12));
    CHECK(total_variation(point, point) == Approx(0.0));
    // Symmetry and triangle inequality spot checks.
    OutcomeDistribution third({"x"});
    third.add({0}, 0.5);
    third.add({1}, 0.5);
    CHECK(total_variation(point, unif) == Approx(total_variation(unif, point)));
    CHECK(total_variation(point, unif) <=
          total_variation(point, third) + total_variation(third, unif) + 1e-12);
}

TEST_CASE("paired-measurement distinguishability identity") {
    // (1/(4(p-1))) sum_{m in Z_p^*} (cos(2 pi m b / p) - cos(2 pi m b' / p))^2
    // equals p/(4(p-1)) exactly when b, b' and b +- b' are all nonzero mod p:
    // the zero-inner-product step needs b + b' != 0. For b' = -b the two
    // cosine sequences coincide (cosine is even), so the sum, and hence the
    // paired-measurement total variation, is exactly zero: those two
    // conjugates are indistinguishable by this measurement.
    auto chain_sum = [](u64 p, u64 b, u64 bp) {
        double acc = 0;
        for (u64 m = 1; m < p; ++m) {
            double c1 = std::cos(2 * std::numbers::pi * static_cast<double>(m * b % p) /
                                 static_cast<double>(p));
            double c2 = std::cos(2 * std::numbers::pi * static_cast<double>(m * bp % p) /
                                 static_cast<double>(p));
            acc += (c1 - c2) * (c1 - c2);
        }
        return acc / (4.0 * static_cast<double>(p - 1));
    };
    for (u64 p : {23ULL, 103ULL}) {
        double target = static_cast<double>(p) / (4.0 * static_cast<double>(p - 1));
        for (auto [b, bp] : std::vector<std::pair<u64, u64>>{{3, 7}, {1, 5}, {2, p - 3}}) {
            double acc = chain_sum(p, b, bp);
            CHECK(acc == Approx(target).epsilon(1e-12));
            CHECK(acc > 0.25);
        }
        // b = 0 against nonzero b': larger constant 3p/(8(p-1)).
        CHECK(chain_sum(p, 0, 4) ==
              Approx(3.0 * static_cast<double>(p) / (8.0 * static_cast<double>(p - 1)))
                  .epsilon(1e-12));
        // The mirrored pair collapses.
        CHECK(chain_sum(p, 3, p - 3) < 1e-12);
    }
    // The collapse is real, not an artifact of the bound: the full outcome
    // distributions for b and p-b coincide.
    auto spec = GroupSpec::qhedral(23, 11);
    auto d1 = info_measurement_distribution(SubgroupDesc::conjugate(spec.a, 5), spec.a, spec);
    auto d2 = info_measurement_distribution(SubgroupDesc::conjugate(spec.a, 18), spec.a, spec);
    CHECK(total_variation(d1, d2) < 1e-12);
}

TEST_CASE("concentration experiment") {
    SUBCASE("rank == dim has zero tail") {
        auto res = concentration_experiment(64, 64, 200, 1);
        for (double t : res.tail) CHECK(t == 0.0);
    }
    SUBCASE("r=256 d=1024 delta=1 stays under the bound") {
        auto res = concentration_experiment(256, 1024, 2000, 7, {1.0});
        CHECK(res.bound[0] == Approx(4.0 * std::exp(-256.0 / 48.0)).epsilon(1e-12));
        CHECK(res.tail[0] <= res.bound[0] + 3.0 * res.sigma[0]);
    }
    SUBCASE("independent of chunking: same per-vector streams") {
        auto a = concentration_experiment(64, 256, 500, 3, {0.5, 1.0});
        auto b = concentration_experiment(64, 256, 500, 3, {0.5, 1.0});
        CHECK(a.tail == b.tail);
    }
}
