#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hspsim/group.hpp"

namespace hspsim {

using u32 = std::uint32_t;

/// Multiplication-table group used for quotients.
struct TableGroup {
    std::vector<std::vector<u32>> mult;
    u32 identity = 0;

    size_t size() const { return mult.size(); }
    u32 mul(u32 x, u32 y) const { return mult[x][y]; }
    u32 inv(u32 x) const;
};

/// A finite group G with a distinguished normal subgroup K (listed) and a
/// transversal of the K-cosets; the quotient G/K is materialized as a
/// table group over transversal indices. Only a transversal is required, not
/// a homomorphic section, so non-split extensions are supported.
class ExtensionGroup {
public:
    ExtensionGroup(std::vector<std::string> names, std::vector<std::vector<u32>> table,
                   std::vector<u32> k_elements, std::vector<u32> transversal);

    size_t size() const { return table_.size(); }
    u32 identity() const { return identity_; }
    u32 mul(u32 x, u32 y) const { return table_[x][y]; }
    u32 inv(u32 x) const { return inv_[x]; }
    const std::string& name(u32 x) const { return names_[x]; }

    const std::vector<u32>& k_elements() const { return k_; }
    const std::vector<u32>& transversal() const { return transversal_; }
    /// Index into the transversal of the coset gK.
    u32 coset_of(u32 g) const { return coset_[g]; }
    const TableGroup& quotient() const { return quotient_; }

    /// Q8 x Z_n with K the center {+-1} x Z_n; quotient is the Klein group.
    static ExtensionGroup q8_times_cyclic(u64 n);
    /// Z_q |x Z_p as an extension of K = Z_p; the quotient table is addition
    /// mod q under the transversal (a^w, 0).
    static ExtensionGroup from_qhedral(const GroupSpec& spec);

    static ExtensionGroup from_json(const std::string& text);
    std::string to_json() const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<u32>> table_;
    std::vector<u32> inv_;
    u32 identity_ = 0;
    std::vector<u32> k_;
    std::vector<u32> transversal_;
    std::vector<u32> coset_;
    TableGroup quotient_;
};

/// Oracle on element indices; ground truth is the sorted element list of the
/// hidden subgroup.
using ExtOracle = BasicOracle<u32, std::vector<u32>>;

/// Closure of a generating set inside a table group multiply function.
std::vector<u32> generated_subgroup(const std::vector<u32>& gens,
                                    const std::function<u32(u32, u32)>& mul, u32 identity);

ExtOracle make_extension_oracle(const ExtensionGroup& ext, const std::vector<u32>& gens);

/// f'(h) = sorted multiset of f over t(h) K. Each f' evaluation performs |K|
/// queries to f. Level sets of f' are the cosets of the image of the hidden
/// subgroup in the quotient.
ExtOracle multiset_oracle(const ExtOracle& f, const ExtensionGroup& ext);

/// Pluggable solver for the quotient HSP: takes the multiset oracle and the
/// quotient group, returns generators (quotient indices) of the hidden
/// subgroup of the quotient.
using HSolver = std::function<std::vector<u32>(const ExtOracle&, const TableGroup&)>;

/// Exhaustive quotient solver: the level set of the identity is the subgroup.
HSolver brute_force_h_solver();

/// Adapter running the abelian Fourier-sampling solver on a quotient whose
/// table is addition modulo its size.
HSolver cyclic_abelian_h_solver(u64 seed);

struct SubgroupTriple {
    std::vector<u32> S;        // generators of L intersect K (element indices of G)
    std::vector<u32> T;        // generators of the quotient image (quotient indices)
    std::map<u32, u32> eta;    // quotient generator -> subgroup element in its coset
};

/// Elements of the subgroup generated by S and eta(T).
std::vector<u32> triple_elements(const SubgroupTriple& triple, const ExtensionGroup& ext);

/// Three-step reconstruction: scan K for the intersection, solve the quotient
/// HSP through the multiset oracle, then locate one subgroup element in each
/// generator's coset. Throws std::runtime_error on a promise violation.
SubgroupTriple solve_extension_hsp(const ExtOracle& f, const ExtensionGroup& ext,
                                   const HSolver& h_solver);

/// Abelian HSP by simulated Fourier sampling over Z_{n1} x ... x Z_{nk}.
struct AbelianSpec {
    std::vector<u64> moduli;
    u64 order() const;
};
using AbelianElement = std::vector<u64>;
using AbelianOracle = BasicOracle<AbelianElement, std::vector<AbelianElement>>;

AbelianOracle make_abelian_oracle(const AbelianSpec& spec,
                                  const std::vector<AbelianElement>& gens);

/// Samples characters exactly (uniform over the annihilator of the hidden
/// subgroup), intersects their kernels, and returns generators of the hidden
/// subgroup. Throws std::runtime_error when the sample budget is exhausted.
std::vector<AbelianElement> abelian_hsp_solver(const AbelianOracle& f, const AbelianSpec& spec,
                                               u64 seed);

}  // namespace hspsim
