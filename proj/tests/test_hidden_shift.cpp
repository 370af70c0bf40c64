#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "hspsim/hidden_shift.hpp"

using namespace hspsim;
using doctest::Approx;

TEST_CASE("coset function structure, p=13 r=3") {
    CosetFunction f(13, 3, 42);
    // The index-3 subgroup of Z_13^* (independently computed).
    std::set<u64> M = {1, 5, 8, 12};
    CHECK(mod_pow(f.gamma(), 3, 13) != 1);
    // Constant on each multiplicative coset of M, distinct across cosets.
    std::map<u64, std::set<u64>> by_symbol;
    for (u64 x = 1; x < 13; ++x) by_symbol[f(x)].insert(x);
    CHECK(by_symbol.size() == 3);
    for (auto& [sym, coset] : by_symbol) {
        CHECK(sym < 3);
        CHECK(coset.size() == 4);
        u64 x0 = *coset.begin();
        for (u64 m : M) CHECK(coset.count(mod_mul(x0, m, 13)) == 1);
    }
    CHECK(by_symbol.count(1) + by_symbol.count(0) + by_symbol.count(2) == 3);
    // Reserved symbol at zero, never taken on Z_p^*.
    CHECK(f(0) == 3);

    // Different seeds permute the symbols but keep the level sets.
    CosetFunction g(13, 3, 43);
    for (u64 x = 1; x < 13; ++x)
        for (u64 y = 1; y < 13; ++y)
            CHECK((f(x) == f(y)) == (g(x) == g(y)));
}

TEST_CASE("sample set size and determinism") {
    auto r1 = draw_sample_set(103, 7);
    auto r2 = draw_sample_set(103, 7);
    CHECK(r1 == r2);
    CHECK(r1.size() == 34);  // ceil(5 log2 103)
    CHECK(draw_sample_set(10007, 1).size() == 67);
    for (u64 x : r1) CHECK(x < 103);
}

TEST_CASE("symmetry oracle is constant exactly on symmetry cosets, p=13 r=3") {
    CosetFunction f(13, 3, 5);
    auto spec = GroupSpec::affine(13, f.gamma());
    u64 a = mod_pow(f.gamma(), 3, 13);  // order 4
    u64 s = 9;
    auto sample = draw_sample_set(13, 11);
    auto F = sampled_symmetry_oracle(f, s, sample, spec);
    CHECK(F.ground_truth() == SubgroupDesc::conjugate(a, s));

    auto elems = enumerate_subgroup(SubgroupDesc::full(), spec);
    std::map<OracleSymbol, std::set<size_t>> classes;
    std::map<GroupElement, size_t> coset_of;
    auto reps = coset_representatives(SubgroupDesc::conjugate(a, s), spec);
    for (size_t i = 0; i < reps.size(); ++i)
        for (const auto& h : enumerate_subgroup(SubgroupDesc::conjugate(a, s), spec))
            coset_of[multiply(reps[i], h, spec)] = i;
    for (const auto& g : elems) classes[F(g)].insert(coset_of[g]);
    // Constant on cosets always; distinct across cosets for this sample set.
    for (auto& [sym, ids] : classes) CHECK(ids.size() == 1);
    CHECK(classes.size() == reps.size());
}

TEST_CASE("collision probability") {
    CosetFunction f(13, 3, 5);
    auto spec = GroupSpec::affine(13, f.gamma());
    u64 a = mod_pow(f.gamma(), 3, 13);
    u64 s = 4;
    GroupElement id{1, 0};

    SUBCASE("same symmetry coset collides everywhere") {
        GroupElement h{a, mod_mul(mod_sub(1, a, 13), s, 13)};
        CHECK(collision_probability(f, s, id, h, spec) == Approx(1.0));
        GroupElement g{5, 7};
        CHECK(collision_probability(f, s, g, multiply(g, h, spec), spec) == Approx(1.0));
    }
    SUBCASE("depends only on the quotient") {
        GroupElement alpha{6, 2}, beta{11, 9};
        GroupElement delta = multiply(inverse(alpha, spec), beta, spec);
        CHECK(collision_probability(f, s, alpha, beta, spec) ==
              Approx(collision_probability(f, s, id, delta, spec)));
    }
    SUBCASE("injective coset function: off-subgroup collisions are the fixed point") {
        CosetFunction inj(13, 12, 2);
        // delta with multiplier != 1 fixes exactly one point of Z_13.
        CHECK(collision_probability(inj, 0, id, GroupElement{2, 0}, spec) ==
              Approx(1.0 / 13.0));
        CHECK(collision_probability(inj, 0, id, GroupElement{2, 5}, spec) ==
              Approx(1.0 / 13.0));
        // A pure translation has no fixed point at all.
        CHECK(collision_probability(inj, 0, id, GroupElement{1, 5}, spec) == Approx(0.0));
    }
}

TEST_CASE("solve_hidden_shift recovers the shift") {
    SUBCASE("p=103 r=6") {
        CosetFunction f(103, 6, 77);
        for (u64 s : {u64{0}, u64{17}, u64{102}}) {
            auto res = solve_hidden_shift(f, s, 1000 + s);
            CHECK(res.verified);
            CHECK(res.shift == s);
        }
    }
    SUBCASE("large dihedral-like regime p=10007 r=2") {
        CosetFunction f(10007, 2, 3);
        auto res = solve_hidden_shift(f, 9999, 51);
        CHECK(res.verified);
        CHECK(res.shift == 9999);
        CHECK(res.trials <= 200);
    }
}
