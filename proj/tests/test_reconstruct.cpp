#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "hspsim/reconstruct.hpp"

using namespace hspsim;

namespace {

std::vector<GroupElement> all_elements(const GroupSpec& spec) {
    return enumerate_subgroup(SubgroupDesc::full(), spec);
}

}  // namespace

TEST_CASE("extend_qhedral_oracle: exhaustive level-set check at p=23") {
    // For every hidden subgroup of the small group, the lifted oracle on the
    // full affine group must be constant exactly on the left cosets of the
    // embedded subgroup (the same symbolic description, with `full` mapping
    // to the normal subgroup N_q).
    auto aspec = GroupSpec::affine(23);
    for (u64 q : {11ULL, 2ULL}) {
        auto qspec = GroupSpec::qhedral(23, q);
        std::vector<SubgroupDesc> hidden = {SubgroupDesc::trivial(), SubgroupDesc::full(),
                                            SubgroupDesc::conjugate(qspec.a, 0),
                                            SubgroupDesc::conjugate(qspec.a, 7),
                                            SubgroupDesc::conjugate(qspec.a, 22)};
        if (q == 11) hidden.push_back(SubgroupDesc::conjugate(qspec.a, 13));
        for (const auto& h : hidden) {
            auto f = make_subgroup_oracle(h, qspec);
            auto ext = extend_qhedral_oracle(f, qspec);
            SubgroupDesc embedded = ext.ground_truth();
            if (h.kind == SubgroupDesc::Kind::full)
                CHECK(embedded == SubgroupDesc::normal_nq(qspec.a));
            else
                CHECK(embedded == h);

            // f'(g) determines and is determined by the coset gH~.
            std::map<OracleSymbol, GroupElement> seen;  // symbol -> first coset member
            auto elems = all_elements(aspec);
            for (const auto& g : elems) {
                auto sym = ext(g);
                auto it = seen.find(sym);
                if (it == seen.end()) {
                    seen.emplace(sym, g);
                } else {
                    auto d = multiply(inverse(it->second, aspec), g, aspec);
                    CHECK(subgroup_contains(embedded, d, aspec));
                }
            }
            CHECK(seen.size() == elems.size() / subgroup_order(embedded, aspec));
            CHECK(ext.queries() == elems.size());
            CHECK(f.queries() == elems.size());  // each lifted query costs one base query
        }
    }
}

TEST_CASE("solve_hcp_affine recovers hidden conjugates") {
    SUBCASE("maximal case, p=103") {
        auto spec = GroupSpec::affine(103);
        for (u64 b : {u64{0}, u64{1}, u64{51}, u64{102}}) {
            auto f = make_subgroup_oracle(SubgroupDesc::conjugate(spec.gamma, b), spec);
            auto res = solve_hcp_affine(f, spec.gamma, spec, 1234 + b, 50);
            CHECK(res.verified);
            CHECK(res.recovered == SubgroupDesc::conjugate(spec.gamma, b));
            CHECK(res.trials <= 50);
            CHECK(res.queries >= res.trials);  // preparations plus verification probes
            CHECK(res.transcript.size() == res.trials);
        }
    }
    SUBCASE("small-order conjugate, p=103, q=17") {
        auto spec = GroupSpec::affine(103);
        u64 a = mod_pow(spec.gamma, (103 - 1) / 17, 103);
        for (u64 b : {u64{9}, u64{60}}) {
            auto f = make_subgroup_oracle(SubgroupDesc::conjugate(a, b), spec);
            auto res = solve_hcp_affine(f, a, spec, 77 + b, 200);
            CHECK(res.verified);
            CHECK(res.recovered == SubgroupDesc::conjugate(a, b));
        }
    }
    SUBCASE("trivial hidden subgroup never verifies a conjugate") {
        auto spec = GroupSpec::affine(23);
        auto f = make_subgroup_oracle(SubgroupDesc::trivial(), spec);
        auto res = solve_hcp_affine(f, spec.gamma, spec, 5, 40);
        CHECK_FALSE(res.verified);
        CHECK(res.trials == 40);
    }
    SUBCASE("deterministic for a fixed seed") {
        auto spec = GroupSpec::affine(103);
        auto f1 = make_subgroup_oracle(SubgroupDesc::conjugate(spec.gamma, 42), spec);
        auto f2 = make_subgroup_oracle(SubgroupDesc::conjugate(spec.gamma, 42), spec);
        auto r1 = solve_hcp_affine(f1, spec.gamma, spec, 99, 50);
        auto r2 = solve_hcp_affine(f2, spec.gamma, spec, 99, 50);
        CHECK(r1.trials == r2.trials);
        CHECK(r1.queries == r2.queries);
        CHECK(r1.transcript == r2.transcript);
    }
}

TEST_CASE("reconstruct_normal_core") {
    auto qspec = GroupSpec::qhedral(23, 11);
    auto core = [&](const SubgroupDesc& h, const GroupSpec& s) {
        auto f = make_subgroup_oracle(h, s);
        return reconstruct_normal_core(f, s);
    };
    CHECK(core(SubgroupDesc::full(), qspec) == SubgroupDesc::full());
    // N_q with q' = q is the whole q-hedral group.
    CHECK(same_subgroup(core(SubgroupDesc::normal_nq(qspec.a), qspec),
                        SubgroupDesc::normal_nq(qspec.a), qspec));
    CHECK(core(SubgroupDesc::conjugate(qspec.a, 4), qspec).kind == SubgroupDesc::Kind::trivial);
    CHECK(core(SubgroupDesc::trivial(), qspec).kind == SubgroupDesc::Kind::trivial);

    auto aspec = GroupSpec::affine(23);
    u64 a11 = mod_pow(aspec.gamma, 2, 23);
    CHECK(same_subgroup(core(SubgroupDesc::normal_nq(a11), aspec), SubgroupDesc::normal_nq(a11),
                        aspec));
    CHECK(core(SubgroupDesc::conjugate(aspec.gamma, 7), aspec).kind ==
          SubgroupDesc::Kind::trivial);
}

TEST_CASE("solve_hsp_qhedral across the subgroup lattice, p=23 q=11") {
    auto spec = GroupSpec::qhedral(23, 11);
    std::vector<SubgroupDesc> hidden = {SubgroupDesc::trivial(), SubgroupDesc::full(),
                                        SubgroupDesc::normal_nq(spec.a)};
    for (u64 b : {u64{0}, u64{5}, u64{13}, u64{22}})
        hidden.push_back(SubgroupDesc::conjugate(spec.a, b));
    u64 salt = 0;
    for (const auto& h : hidden) {
        auto f = make_subgroup_oracle(h, spec);
        auto res = solve_hsp_qhedral(f, spec, 4000 + salt++);
        CHECK(res.verified);
        CHECK(same_subgroup(res.recovered, h, spec));
        CHECK(res.queries == f.queries());
    }
}

TEST_CASE("ml_reconstruct_conjugate") {
    SUBCASE("affine ambient, order-11 hidden conjugate") {
        auto spec = GroupSpec::affine(23);
        u64 a = mod_pow(spec.gamma, 2, 23);
        for (u64 b : {u64{0}, u64{7}, u64{12}}) {
            auto f = make_subgroup_oracle(SubgroupDesc::conjugate(a, b), spec);
            auto res = ml_reconstruct_conjugate(f, a, spec, 400, 31 + b);
            CHECK(res.verified);
            CHECK(res.recovered == SubgroupDesc::conjugate(a, b));
            CHECK(res.trials == 400);
            CHECK(res.queries >= 400);
        }
    }
    SUBCASE("dihedral regime q=2") {
        auto spec = GroupSpec::qhedral(103, 2);
        auto f = make_subgroup_oracle(SubgroupDesc::conjugate(spec.a, 85), spec);
        auto res = ml_reconstruct_conjugate(f, spec.a, spec, 400, 8);
        CHECK(res.verified);
        CHECK(res.recovered == SubgroupDesc::conjugate(spec.a, 85));
    }
    SUBCASE("trivial truth gives uniform samples and no verified candidate") {
        auto spec = GroupSpec::affine(23);
        auto f = make_subgroup_oracle(SubgroupDesc::trivial(), spec);
        auto res = ml_reconstruct_conjugate(f, spec.gamma, spec, 200, 9);
        CHECK_FALSE(res.verified);
    }
}

TEST_CASE("determine_subgroup_order, p=29 q=28") {
    auto spec = GroupSpec::qhedral(29, 28);
    std::map<u64, u64> cases;  // hidden order -> shift
    for (u64 ord : {1ULL, 2ULL, 4ULL, 7ULL, 14ULL, 28ULL}) cases[ord] = (3 * ord + 5) % 29;
    u64 salt = 0;
    for (auto [ord, b] : cases) {
        SubgroupDesc h = ord == 1 ? SubgroupDesc::trivial()
                                  : SubgroupDesc::conjugate(mod_pow(spec.a, 28 / ord, 29), b);
        auto f = make_subgroup_oracle(h, spec);
        CHECK(determine_subgroup_order(f, spec, 600 + salt++) == ord);
    }
}

TEST_CASE("info_reconstruct_subgroup end to end") {
    SUBCASE("qhedral, p=29 q=28") {
        auto spec = GroupSpec::qhedral(29, 28);
        std::vector<SubgroupDesc> hidden = {SubgroupDesc::trivial(),
                                            SubgroupDesc::conjugate(mod_pow(spec.a, 4, 29), 11),
                                            SubgroupDesc::conjugate(spec.a, 20),
                                            SubgroupDesc::normal_nq(mod_pow(spec.a, 14, 29)),
                                            SubgroupDesc::full()};
        u64 salt = 0;
        for (const auto& h : hidden) {
            auto f = make_subgroup_oracle(h, spec);
            auto res = info_reconstruct_subgroup(f, spec, 7000 + salt++);
            CHECK(res.verified);
            CHECK(same_subgroup(res.recovered, h, spec));
        }
    }
    SUBCASE("affine ambient, p=23") {
        auto spec = GroupSpec::affine(23);
        auto f = make_subgroup_oracle(SubgroupDesc::conjugate(mod_pow(spec.gamma, 2, 23), 7),
                                      spec);
        auto res = info_reconstruct_subgroup(f, spec, 424242);
        CHECK(res.verified);
        CHECK(res.recovered == SubgroupDesc::conjugate(mod_pow(spec.gamma, 2, 23), 7));
    }
}
