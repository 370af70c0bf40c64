#pragma once

#include <vector>

#include "hspsim/distribution.hpp"
#include "hspsim/group.hpp"
#include "hspsim/sampling.hpp"

namespace hspsim {

struct ReconstructionResult {
    SubgroupDesc recovered;
    u64 trials = 0;
    u64 queries = 0;
    std::vector<Outcome> transcript;  // observed measurement outcomes, per trial
    bool verified = false;
};

/// Hidden-conjugate solver: repeatedly samples the row-Fourier measurement,
/// maps each observed frequency to the nearest candidate shift (probing its
/// two neighbours as well), and majority-votes with verification against the
/// oracle. `a` is the hypothesized conjugacy-class generator.
ReconstructionResult solve_hcp_affine(const HiddenOracle& f, u64 a, const GroupSpec& spec,
                                      u64 seed, u64 max_trials);

/// Normal core of the hidden subgroup: intersection of the kernels of every
/// irrep observed with positive probability under weak sampling.
SubgroupDesc reconstruct_normal_core(const HiddenOracle& f, const GroupSpec& spec);

/// Lift an oracle on Z_q |x Z_p to the full affine group. Writing
/// alpha = tau a^w with tau the minimal representative of alpha<a>, the lifted
/// value is (f((a^w, beta tau^{-1})), tau); its level sets are exactly the
/// left cosets of the embedded image of f's hidden subgroup.
HiddenOracle extend_qhedral_oracle(const HiddenOracle& f, const GroupSpec& qspec);

/// Full q-hedral HSP: normal core first; on a trivial core, test the trivial
/// hypothesis, then embed into the affine group and run the conjugate solver
/// for each candidate subgroup order.
ReconstructionResult solve_hsp_qhedral(const HiddenOracle& f, const GroupSpec& spec, u64 seed);

/// Information-theoretic reconstruction: draws outcomes of the paired-position
/// measurement and scans all p candidate shifts for the exact maximum
/// likelihood, smallest candidate first on ties, verifying against the oracle.
ReconstructionResult ml_reconstruct_conjugate(const HiddenOracle& f, u64 a, const GroupSpec& spec,
                                              u64 num_samples, u64 seed);

/// Order of a hidden non-normal cyclic subgroup: for each prime power
/// dividing q, adjoins the power map g -> g.a^{p_i^alpha} to the oracle and
/// tests the hypothesis that the intersection with the order-p_i^alpha normal
/// subgroup is full, via ml_reconstruct_conjugate. Returns the product of the
/// largest verified prime powers.
u64 determine_subgroup_order(const HiddenOracle& f, const GroupSpec& spec, u64 seed);

/// End-to-end information-theoretic HSP for either family: normal core, then
/// order finding, then maximum-likelihood conjugate reconstruction.
ReconstructionResult info_reconstruct_subgroup(const HiddenOracle& f, const GroupSpec& spec,
                                               u64 seed);

}  // namespace hspsim
