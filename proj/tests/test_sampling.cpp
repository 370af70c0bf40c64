#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "hspsim/sampling.hpp"

using namespace hspsim;
using doctest::Approx;

namespace {

// Independent reference: Fourier transform of the explicit |G|-dimensional
// coset-state vector, with every measurement realized on raw amplitudes.
Matrix reference_fourier_block(const Irrep& rep, const SubgroupDesc& h, const GroupElement& c,
                               const GroupSpec& spec) {
    auto coset = enumerate_subgroup(h, spec);
    double amp = 1.0 / std::sqrt(static_cast<double>(coset.size()));
    Matrix acc = Matrix::Zero(rep.dim, rep.dim);
    for (const auto& g : coset) acc += amp * rep.eval(multiply(c, g, spec));
    return std::sqrt(static_cast<double>(rep.dim) / static_cast<double>(spec.order())) * acc;
}

// Reference measurement chain on raw amplitudes: condition on the high-dimensional
// irrep, measure the row, read the column-coset label, apply the paired-
// position POVM via Kraus operators, then a two-point Hadamard.
OutcomeDistribution reference_info_distribution(const SubgroupDesc& truth, u64 hyp_a,
                                                const GroupSpec& spec) {
    u64 p = spec.p;
    u64 a_amb = spec.kind == GroupKind::affine ? spec.gamma : spec.a;
    u64 q_h = multiplicative_order(hyp_a, p);
    CosetStructure cs(p, hyp_a);
    CosetStructure cs_amb(p, a_amb);

    // q-hedral groups have several inequivalent high-dimensional irreps; the
    // chain must be averaged over which one is observed.
    std::vector<Irrep> highs;
    if (spec.kind == GroupKind::affine) highs.push_back(rho_affine(spec));
    else
        for (u64 k : cs_amb.reps()) highs.push_back(rho_qhedral(spec, k));

    OutcomeDistribution dist({"k", "u", "bit"});
    auto cosets = coset_representatives(truth, spec);
    double coset_w = 1.0 / static_cast<double>(cosets.size());
    double mass_high = 0;
    for (const auto& c : cosets) {
        for (const auto& hrep : highs) {
            Matrix m = reference_fourier_block(hrep, truth, c, spec);
            mass_high += coset_w * m.squaredNorm();
            for (i64 row = 0; row < hrep.dim; ++row) {
                Vector psi = m.row(row);
                double prow = psi.squaredNorm();
                if (prow < 1e-15) continue;
                psi /= std::sqrt(prow);
                // column index -> (coset label, position)
                auto col_residue = [&](i64 col) -> u64 {
                    if (spec.kind == GroupKind::affine) return static_cast<u64>(col + 1);
                    // rho_k column s corresponds to residue k * a^s
                    return mod_mul(static_cast<u64>(hrep.index),
                                   mod_pow(a_amb, static_cast<u64>(col), p), p);
                };
                // The conditional column support lies inside one coset block,
                // so summing over all columns with a given position keeps at
                // most one nonzero amplitude per Kraus arm.
                Eigen::Index support_col = 0;
                psi.cwiseAbs().maxCoeff(&support_col);
                u64 klabel = cs.rep(col_residue(support_col));
                for (u64 u = 0; u < q_h; ++u) {
                    cplx a0{0, 0}, a1{0, 0};
                    for (i64 col = 0; col < hrep.dim; ++col) {
                        u64 pos = cs.pos(col_residue(col));
                        if (pos == u) a0 += psi(col);
                        if (pos == (u + 1) % q_h) a1 += psi(col);
                    }
                    double pu = (std::norm(a0) + std::norm(a1)) / 2.0;
                    if (pu < 1e-18) continue;
                    double nrm = std::sqrt(2.0 * pu);
                    cplx b0 = (a0 + a1) / (nrm * std::sqrt(2.0));
                    cplx b1 = (a0 - a1) / (nrm * std::sqrt(2.0));
                    double w = coset_w * prow * pu;
                    dist.add({static_cast<i64>(klabel), static_cast<i64>(u), 0}, w * std::norm(b0));
                    dist.add({static_cast<i64>(klabel), static_cast<i64>(u), 1}, w * std::norm(b1));
                }
            }
        }
    }
    // condition on having observed a high-dimensional irrep
    OutcomeDistribution out({"k", "u", "bit"});
    for (auto& [o, pr] : dist.pmf()) out.add(o, pr / mass_high);
    return out;
}

}  // namespace

TEST_CASE("haar_unitary is unitary and seed-deterministic") {
    std::mt19937_64 rng(5), rng2(5);
    Matrix u = haar_unitary(20, rng), v = haar_unitary(20, rng2);
    CHECK((u * u.adjoint() - Matrix::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((u - v).cwiseAbs().maxCoeff() == 0.0);
    std::mt19937_64 rng3(6);
    CHECK((u - haar_unitary(20, rng3)).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("strong sampling normalizes and localizes") {
    auto spec = GroupSpec::affine(7);
    for (auto basis : {MeasurementBasis::adapted(), MeasurementBasis::haar(11)}) {
        for (auto h : {SubgroupDesc::trivial(), SubgroupDesc::conjugate(3, 2),
                       SubgroupDesc::conjugate(2, 5), SubgroupDesc::normal_nq(2)}) {
            std::mt19937_64 rng(1);
            auto c = random_element(spec, rng);
            auto dist = strong_sample_distribution(h, c, basis, spec);
            CHECK(dist.total_mass() == Approx(1.0).epsilon(1e-9));
        }
    }
    auto full = strong_sample_distribution(SubgroupDesc::full(), identity_element(),
                                           MeasurementBasis::adapted(), spec);
    CHECK(full.probability({0, 0, 0, 0}) == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("coset-averaged marginal reproduces the weak distribution") {
    auto spec = GroupSpec::affine(7);
    for (auto h : {SubgroupDesc::conjugate(3, 1), SubgroupDesc::conjugate(2, 0),
                   SubgroupDesc::normal_nq(2), SubgroupDesc::trivial()}) {
        auto avg = coset_averaged_distribution(h, MeasurementBasis::adapted(), spec);
        CHECK(avg.total_mass() == Approx(1.0).epsilon(1e-9));
        std::map<Outcome, double> marginal;
        for (auto& [o, pr] : avg.pmf()) marginal[{o[0], o[1]}] += pr;
        auto weak = observe_rep_distribution(h, spec);
        for (auto& [o, pr] : weak.pmf()) CHECK(marginal[o] == Approx(pr).epsilon(1e-9));
    }
}

TEST_CASE("closed-form row Fourier distribution matches the dense pipeline") {
    auto spec = GroupSpec::affine(23);
    std::mt19937_64 rng(9);
    for (u64 a : {5ULL /*order 22*/, 4ULL /*order 11*/, 22ULL /*order 2*/}) {
        for (u64 b : {0ULL, 7ULL, 19ULL}) {
            auto h = SubgroupDesc::conjugate(a, b);
            auto closed = row_fourier_distribution(h, spec);
            CHECK(closed.total_mass() == Approx(1.0).epsilon(1e-9));
            for (int i = 0; i < 2; ++i) {
                auto c = random_element(spec, rng);
                auto brute = row_fourier_distribution_bruteforce(h, c, spec);
                CHECK(l1_distance(closed, brute) < 1e-9);
            }
        }
    }
}

TEST_CASE("maximal-case sin^2 formula") {
    for (u64 p : {7ULL, 23ULL}) {
        auto spec = GroupSpec::affine(p);
        for (u64 b = 0; b < p; ++b) {
            auto pmf = column_fourier_conditional_pmf(p, spec.gamma, b, 1);
            double sum = 0, best = 0;
            for (u64 l = 0; l < p - 1; ++l) {
                CHECK(pmf[l] == Approx(maximal_case_prob(p, b, l)).epsilon(1e-9));
                sum += pmf[l];
                best = std::max(best, pmf[l]);
            }
            CHECK(sum == Approx(1.0).epsilon(1e-9));
            CHECK(best >= 4.0 / (std::numbers::pi * std::numbers::pi));
            CHECK(pmf[best_frequency(p, b)] == Approx(best).epsilon(1e-9));
            // A frequency can sit exactly between two shifts, so the inverse
            // guess is only guaranteed within 1 (solvers probe b_hat +- 1).
            u64 guess = frequency_to_shift(p, best_frequency(p, b));
            u64 delta = std::min(mod_sub(guess, b, p), mod_sub(b, guess, p));
            CHECK(delta <= 1);
        }
    }
}

TEST_CASE("coset interval fraction") {
    auto spec7 = GroupSpec::affine(7);
    CHECK(coset_interval_fraction(2, 1, spec7) == Approx(2.0 / 3.0));  // {1,2,4} -> {2,4}
    auto spec103 = GroupSpec::affine(103);
    u64 a51 = mod_pow(5, 2, 103);
    for (u64 k = 1; k < 103; ++k) CHECK(coset_interval_fraction(a51, k, spec103) >= 0.25);
}

TEST_CASE("info measurement distribution: structure and marginals") {
    auto spec = GroupSpec::affine(23);
    u64 a11 = mod_pow(5, 2, 23);

    SUBCASE("b = 0 pins the bit to 0") {
        auto dist = info_measurement_distribution(SubgroupDesc::conjugate(a11, 0), a11, spec);
        for (auto& [o, pr] : dist.pmf()) CHECK(o[2] == 0);
        CHECK(dist.total_mass() == Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("k and u marginals are uniform") {
        auto dist = info_measurement_distribution(SubgroupDesc::conjugate(a11, 13), a11, spec);
        std::map<i64, double> mk, mu;
        for (auto& [o, pr] : dist.pmf()) { mk[o[0]] += pr; mu[o[1]] += pr; }
        CHECK(mk.size() == 2);  // (p-1)/q = 2 coset labels
        for (auto& [k, pr] : mk) CHECK(pr == Approx(0.5).epsilon(1e-12));
        CHECK(mu.size() == 11);
        for (auto& [u, pr] : mu) CHECK(pr == Approx(1.0 / 11).epsilon(1e-12));
    }

    SUBCASE("effective coefficient covers Z_p^* exactly once") {
        u64 p = 23;
        CosetStructure cs(p, a11);
        std::set<u64> seen;
        for (u64 k : cs.reps())
            for (u64 u = 0; u < 11; ++u)
                seen.insert(mod_mul(mod_mul(k, mod_pow(a11, u, p), p), mod_sub(a11, 1, p), p));
        CHECK(seen.size() == 22);
        CHECK(seen.count(0) == 0);
    }

    SUBCASE("strict-subgroup truth collapses to uniform") {
        auto dist = info_measurement_distribution(SubgroupDesc::trivial(), a11, spec);
        for (auto& [o, pr] : dist.pmf()) CHECK(pr == Approx(1.0 / (2.0 * 2 * 11)).epsilon(1e-12));
        CHECK(dist.total_mass() == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("info measurement distribution agrees with the state-vector chain") {
    struct Case {
        GroupSpec spec;
        SubgroupDesc truth;
        u64 hyp_a;
    };
    auto a7 = GroupSpec::affine(7);
    auto q23 = GroupSpec::qhedral(23, 11);
    u64 o3 = mod_pow(a7.gamma, 2, 7);   // order 3 in Z_7^*
    u64 o2 = mod_pow(a7.gamma, 3, 7);   // order 2
    std::vector<Case> cases = {
        {a7, SubgroupDesc::conjugate(a7.gamma, 3), a7.gamma},   // maximal hypothesis, match
        {a7, SubgroupDesc::conjugate(o3, 2), o3},               // order-3 match
        {a7, SubgroupDesc::conjugate(o2, 5), o2},               // dihedral-like match
        {a7, SubgroupDesc::conjugate(o2, 5), o2 /*q_t==q_h*/},
        {a7, SubgroupDesc::trivial(), o3},                      // strict subgroup: uniform
        {a7, SubgroupDesc::conjugate(o2, 1), a7.gamma},         // order 2 inside order 6
        {q23, SubgroupDesc::conjugate(q23.a, 17), q23.a},       // q-hedral ambient
        {q23, SubgroupDesc::trivial(), q23.a},
    };
    for (const auto& cs : cases) {
        auto closed = info_measurement_distribution(cs.truth, cs.hyp_a, cs.spec);
        auto ref = reference_info_distribution(cs.truth, cs.hyp_a, cs.spec);
        CHECK(closed.total_mass() == Approx(1.0).epsilon(1e-9));
        CHECK(ref.total_mass() == Approx(1.0).epsilon(1e-9));
        CHECK(l1_distance(closed, ref) < 1e-9);
    }
}

TEST_CASE("info model probability matches the distribution's bit split") {
    auto spec = GroupSpec::affine(23);
    u64 a11 = mod_pow(5, 2, 23);
    u64 b = 9;
    auto dist = info_measurement_distribution(SubgroupDesc::conjugate(a11, b), a11, spec);
    for (auto& [o, pr] : dist.pmf()) {
        if (o[2] != 0) continue;
        double p0 = info_bit0_probability(static_cast<u64>(o[0]), static_cast<u64>(o[1]), a11, b, spec);
        CHECK(pr == Approx(p0 / 22.0).epsilon(1e-9));  // (#labels) x (#positions) = p-1
    }
}

TEST_CASE("info distributions for distinct shifts are far apart") {
    auto spec = GroupSpec::affine(23);
    for (u64 a : {mod_pow(5, 2, 23) /*q=11*/, u64{22} /*q=2*/}) {
        auto d1 = info_measurement_distribution(SubgroupDesc::conjugate(a, 3), a, spec);
        auto d2 = info_measurement_distribution(SubgroupDesc::conjugate(a, 4), a, spec);
        CHECK(total_variation(d1, d2) > 0.25);
    }
}

TEST_CASE("random basis distribution") {
    auto spec = GroupSpec::affine(23);
    auto dist = random_basis_distribution(SubgroupDesc::conjugate(mod_pow(5, 2, 23), 7), 4, spec);
    CHECK(dist.total_mass() == Approx(1.0).epsilon(1e-9));
    auto same = random_basis_distribution(SubgroupDesc::conjugate(mod_pow(5, 2, 23), 7), 4, spec);
    CHECK(l1_distance(dist, same) == 0.0);
    // trivial hidden subgroup: exactly uniform in any basis
    auto uni = random_basis_distribution(SubgroupDesc::trivial(), 99, spec);
    for (auto& [o, pr] : uni.pmf()) CHECK(pr == Approx(1.0 / 22).epsilon(1e-9));
}

TEST_CASE("forgetful abelian measurement hides the shift") {
    u64 p = 23;
    auto spec = GroupSpec::affine(p);
    auto d1 = forgetful_abelian_distribution(SubgroupDesc::conjugate(spec.gamma, 1), spec);
    auto d2 = forgetful_abelian_distribution(SubgroupDesc::conjugate(spec.gamma, 2), spec);
    CHECK(d1.total_mass() == Approx(1.0).epsilon(1e-9));
    CHECK(l1_distance(d1, d2) < 1e-9);
    double pm1 = static_cast<double>(p - 1);
    CHECK(d1.probability({0, 0}) == Approx(1.0 / p).epsilon(1e-9));
    CHECK(d1.probability({0, 5}) == Approx(1.0 / (p * pm1 * pm1)).epsilon(1e-9));
    CHECK(d1.probability({3, 0}) == 0.0);
    CHECK(d1.probability({3, 5}) == Approx(1.0 / (pm1 * pm1)).epsilon(1e-9));
}
