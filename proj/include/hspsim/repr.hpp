#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hspsim/distribution.hpp"
#include "hspsim/group.hpp"

namespace hspsim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Precomputed n-th roots of unity; operator()(k) = exp(2 pi i k / n),
/// k reduced mod n (negative k allowed).
class RootTable {
public:
    explicit RootTable(u64 n);

    u64 n() const { return n_; }
    cplx operator()(i64 k) const {
        i64 r = k % static_cast<i64>(n_);
        if (r < 0) r += static_cast<i64>(n_);
        return roots_[static_cast<size_t>(r)];
    }

private:
    u64 n_;
    std::vector<cplx> roots_;
};

/// One irreducible unitary representation, evaluated densely.
///
/// type 0 are the one-dimensional characters (index = t for the affine group,
/// the Z_q character exponent for q-hedral groups). type 1 are the
/// higher-dimensional representations; for q-hedral groups index is the
/// minimal representative k of the <a>-orbit on Z_p^* inducing rho_k.
struct Irrep {
    std::string name;
    int type = 0;
    i64 index = 0;
    i64 dim = 1;
    std::function<Matrix(const GroupElement&)> eval;
};

Irrep sigma_affine(const GroupSpec& spec, u64 t,
                   std::shared_ptr<const DlogTable> dlog = nullptr);
Irrep rho_affine(const GroupSpec& spec);
Irrep sigma_qhedral(const GroupSpec& spec, u64 ell,
                    std::shared_ptr<const DlogTable> dlog = nullptr);
Irrep rho_qhedral(const GroupSpec& spec, u64 k,
                  std::shared_ptr<const DlogTable> dlog = nullptr);

/// Complete list for either family; shares discrete-log tables internally.
std::vector<Irrep> all_irreps(const GroupSpec& spec);

struct Projector {
    Matrix mat;
    i64 rank = 0;
};

/// pi_H(rho) = (1/|H|) sum_{h in H} rho(h). Rank is recovered from the trace
/// and cross-checked against idempotency.
Projector subgroup_projector(const Irrep& rep, const SubgroupDesc& h, const GroupSpec& spec);

/// Weak-sampling distribution: P(rho) = (dim |H| / |G|) rank(pi_H(rho)).
/// Outcome fields {type, index}.
OutcomeDistribution observe_rep_distribution(const SubgroupDesc& h, const GroupSpec& spec);

/// Reordering of the affine rho basis (indexed by residues j in Z_p^*) that
/// makes rho restricted to the normal subgroup generated by (a, *) block
/// diagonal: residues grouped by their <a>-coset, each block carrying rho_k
/// with k the coset's minimal representative.
struct BlockStructure {
    std::vector<u64> order;                          // residues in adapted order
    std::vector<std::pair<size_t, size_t>> blocks;   // [begin, end) into order
    std::vector<u64> block_rep;                      // minimal rep per block
};

BlockStructure block_structure(u64 p, u64 a);

}  // namespace hspsim
