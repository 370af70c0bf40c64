#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hspsim/distribution.hpp"
#include "hspsim/group.hpp"
#include "hspsim/repr.hpp"

namespace hspsim {

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phase
/// convention that the triangular factor has real positive diagonal.
Matrix haar_unitary(i64 dim, std::mt19937_64& rng);

/// Per-irrep change of basis for the column measurement. `adapted` is the
/// identity everywhere; `haar(seed)` draws one fixed unitary per irrep,
/// reproducibly from (seed, irrep position).
struct MeasurementBasis {
    std::string id;
    std::function<Matrix(const Irrep&, size_t irrep_index)> unitary;

    static MeasurementBasis adapted();
    static MeasurementBasis haar(u64 seed);
};

/// Fourier transform of the coset-state indicator at one irrep:
/// sqrt(d/(|G||H|)) rho(c) sum_{h in H} rho(h).
Matrix fourier_coset_matrix(const Irrep& rep, const SubgroupDesc& h, const GroupElement& c,
                            const GroupSpec& spec);

/// Full strong-sampling distribution over (irrep type, irrep index, row, col)
/// for the coset state cH, measured in the given basis.
OutcomeDistribution strong_sample_distribution(const SubgroupDesc& h, const GroupElement& c,
                                               const MeasurementBasis& basis,
                                               const GroupSpec& spec);

/// Uniform mixture of strong_sample_distribution over one representative per
/// coset: the observable distribution when the coset is not known.
OutcomeDistribution coset_averaged_distribution(const SubgroupDesc& h,
                                                const MeasurementBasis& basis,
                                                const GroupSpec& spec);

/// Conditional pmf over the size-(p-1) Fourier outcome l, given that the
/// measured column coset of <a> has minimal representative k0; hidden
/// subgroup H_a^b, ambient affine group. Closed form
///   P(l | k0) = (1/(q(p-1))) |sum_{x in k0<a>} w_{p-1}^{lx} w_p^{-bx}|^2.
std::vector<double> column_fourier_conditional_pmf(u64 p, u64 a, u64 b, u64 k0);

/// Maximal case (order(a) = p-1): P(l) = sin^2((p-1)theta)/((p-1)^2 sin^2 theta)
/// with theta = pi (b/p - l/(p-1)).
double maximal_case_prob(u64 p, u64 b, u64 l);

/// Joint closed-form distribution over (column coset representative k,
/// Fourier outcome l), conditioned on observing the high-dimensional irrep.
/// Coset independent. Fields {k, l}.
OutcomeDistribution row_fourier_distribution(const SubgroupDesc& h, const GroupSpec& spec);

/// Same distribution computed by the dense pipeline (build rho(c) pi, measure
/// a row, Fourier-transform the column register) for one explicit coset.
OutcomeDistribution row_fourier_distribution_bruteforce(const SubgroupDesc& h,
                                                        const GroupElement& c,
                                                        const GroupSpec& spec);

/// The frequency a given shift should produce: the l minimizing
/// |b/p - l/(p-1)|, smaller l on ties.
u64 best_frequency(u64 p, u64 b);
/// Inverse guess: the shift whose peak is nearest to an observed l.
u64 frequency_to_shift(u64 p, u64 l);

/// Fraction of the multiplicative coset k<a> lying in the open interval
/// (p/6, 5p/6).
double coset_interval_fraction(u64 a, u64 k, const GroupSpec& spec);

/// Outcome distribution of the paired-position measurement chain
/// (block label k, pair index u, post-Hadamard bit), conditioned on the
/// high-dimensional irrep and averaged over cosets.
///
/// `truth` is the actual hidden subgroup (trivial, or a conjugate whose
/// generator lies in <hyp_a>); `hyp_a` parameterizes the measurement: block
/// labels k are the <hyp_a>-coset representatives, positions u index the
/// hyp_a-orbit within a block, and the POVM pairs positions (u, u+1). When
/// the truth's order is strictly below the hypothesis the distribution is
/// exactly uniform. Fields {k, u, bit}.
OutcomeDistribution info_measurement_distribution(const SubgroupDesc& truth, u64 hyp_a,
                                                  const GroupSpec& spec);

/// Model probability that the bit is 0 for outcome (k,u) under candidate
/// shift b: cos^2(pi b k hyp_a^u (hyp_a - 1) / p).
double info_bit0_probability(u64 k, u64 u, u64 hyp_a, u64 b, const GroupSpec& spec);

/// Column measurement of the high-dimensional irrep in a Haar-random basis:
/// P_b(v) = |pi u_v|^2 / rk(pi). Fields {v}.
OutcomeDistribution random_basis_distribution(const SubgroupDesc& h, u64 seed,
                                              const GroupSpec& spec);

/// Character distribution when the group label (a, b) is measured with the
/// abelian transform over Z_q x Z_p, forgetting the nonabelian structure.
/// Coset independent. Fields {k, l}.
OutcomeDistribution forgetful_abelian_distribution(const SubgroupDesc& h, const GroupSpec& spec);

}  // namespace hspsim
