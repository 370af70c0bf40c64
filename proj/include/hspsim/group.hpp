#pragma once

#include <compare>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hspsim/modmath.hpp"
#include "hspsim/oracle.hpp"

namespace hspsim {

enum class GroupKind { affine, qhedral };

/// The ambient group: pairs (a,b), a in Z_p^* (or <spec.a> for q-hedral
/// groups), b in Z_p, with (a1,b1)(a2,b2) = (a1 a2, b1 + a1 b2).
struct GroupSpec {
    u64 p = 0;       // prime modulus
    u64 q = 0;       // order of the multiplicative part; q | p-1
    u64 gamma = 0;   // generator of Z_p^*
    u64 a = 0;       // element of order exactly q
    GroupKind kind = GroupKind::affine;

    u64 order() const { return q * p; }

    /// A_p = Z_p^* |x Z_p. gamma defaults to the smallest generator.
    static GroupSpec affine(u64 p, u64 gamma = 0);

    /// Z_q |x Z_p with q | p-1. a defaults to gamma^{(p-1)/q}.
    static GroupSpec qhedral(u64 p, u64 q, u64 a = 0, u64 gamma = 0);

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct GroupElement {
    u64 a = 1;
    u64 b = 0;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement& x, const GroupElement& y) = default;
};

inline GroupElement identity_element() { return {1, 0}; }

bool element_in_group(const GroupElement& g, const GroupSpec& spec);

GroupElement multiply(const GroupElement& x, const GroupElement& y, const GroupSpec& spec);
GroupElement inverse(const GroupElement& x, const GroupSpec& spec);

/// x y x^{-1}
GroupElement conjugate_element(const GroupElement& x, const GroupElement& y, const GroupSpec& spec);

GroupElement random_element(const GroupSpec& spec, std::mt19937_64& rng);

/// Symbolic subgroup of A_p or Z_q |x Z_p.
///
///   trivial            {(1,0)}
///   full               the whole group
///   normal_nq  (a')    N_{q'} = { (a'^t, b) }, order q' p, q' = order(a')
///   conjugate  (a',b)  H_{a'}^b = { (a'^t, (1-a'^t) b) }, order q'
struct SubgroupDesc {
    enum class Kind { trivial, full, normal_nq, conjugate };

    Kind kind = Kind::trivial;
    u64 a = 1;  // order-q' element (normal_nq, conjugate)
    u64 b = 0;  // conjugating shift (conjugate)

    static SubgroupDesc trivial() { return {Kind::trivial, 1, 0}; }
    static SubgroupDesc full() { return {Kind::full, 1, 0}; }
    static SubgroupDesc normal_nq(u64 a) { return {Kind::normal_nq, a, 0}; }
    static SubgroupDesc conjugate(u64 a, u64 b) { return {Kind::conjugate, a, b}; }

    friend bool operator==(const SubgroupDesc&, const SubgroupDesc&) = default;
};

u64 subgroup_order(const SubgroupDesc& h, const GroupSpec& spec);
bool subgroup_contains(const SubgroupDesc& h, const GroupElement& g, const GroupSpec& spec);

/// Do two descriptions denote the same subgroup?
bool same_subgroup(const SubgroupDesc& x, const SubgroupDesc& y, const GroupSpec& spec);

inline constexpr u64 kEnumerationCap = 1'000'000;

std::vector<GroupElement> enumerate_subgroup(const SubgroupDesc& h, const GroupSpec& spec);
std::vector<GroupElement> coset_representatives(const SubgroupDesc& h, const GroupSpec& spec);

/// Coset positions of Z_p^* relative to a fixed multiplicative subgroup <a>.
///
/// Each x factors uniquely as rep(x) * a^pos(x) with rep(x) the minimal
/// element of the coset x<a>.
class CosetStructure {
public:
    CosetStructure(u64 p, u64 a);

    u64 p() const { return p_; }
    u64 subgroup_order() const { return q_; }
    u64 rep(u64 x) const { return rep_[x]; }
    u64 pos(u64 x) const { return pos_[x]; }
    const std::vector<u64>& reps() const { return reps_; }

private:
    u64 p_, q_;
    std::vector<u64> rep_, pos_;
    std::vector<u64> reps_;
};

using HiddenOracle = BasicOracle<GroupElement, SubgroupDesc>;

/// Oracle whose level sets are exactly the left cosets of h. Symbols are the
/// lexicographically minimal element of each coset, encoded as {a, b}.
HiddenOracle make_subgroup_oracle(const SubgroupDesc& h, const GroupSpec& spec);

/// Monte Carlo check that the oracle's level sets are the left cosets of h:
/// constancy on sampled pairs within sampled cosets, distinctness across
/// sampled coset pairs. Failure probability < 2^-20 for a wrong candidate.
bool verify_subgroup_against_oracle(const HiddenOracle& f, const SubgroupDesc& h,
                                    const GroupSpec& spec, std::mt19937_64& rng);

std::string spec_to_json(const GroupSpec& spec);
std::string spec_to_json(const GroupSpec& spec, const SubgroupDesc& h);
GroupSpec spec_from_json(const std::string& text);
GroupSpec spec_from_json(const std::string& text, SubgroupDesc& h_out);

}  // namespace hspsim
