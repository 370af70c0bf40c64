#pragma once

#include <memory>
#include <vector>

#include "hspsim/group.hpp"
#include "hspsim/reconstruct.hpp"

namespace hspsim {

/// f: Z_p -> {0,...,r} constant exactly on the multiplicative cosets of the
/// index-r subgroup M = <gamma^r> of Z_p^*, with a seeded assignment of the
/// symbols 0..r-1 to cosets and the reserved symbol r at 0, so f(0) is not a
/// value taken on Z_p^*.
class CosetFunction {
public:
    CosetFunction(u64 p, u64 r, u64 seed);

    u64 p() const { return p_; }
    u64 r() const { return r_; }
    u64 gamma() const { return gamma_; }
    u64 operator()(u64 x) const;

private:
    u64 p_, r_, gamma_;
    std::shared_ptr<const DlogTable> dlog_;
    std::vector<u64> symbol_;  // coset index -> symbol
};

/// Sample points of Z_p drawn with replacement; m = ceil(5 log2 p).
std::vector<u64> draw_sample_set(u64 p, u64 seed);

/// Oracle on the affine group evaluating the shifted function on the sample
/// set: F(alpha) = (f(alpha^{-1}(x_1) - s), ..., f(alpha^{-1}(x_m) - s)) with
/// alpha acting as x -> alpha.a x + alpha.b. F is exactly constant on the
/// left cosets of the symmetry subgroup H = {(m, (1-m)s) : m in M}, and
/// distinct across cosets with high probability over the sample set.
HiddenOracle sampled_symmetry_oracle(const CosetFunction& f, u64 s,
                                     const std::vector<u64>& sample, const GroupSpec& spec);

/// Exact Pr_x[f_s(alpha^{-1}(x)) = f_s(beta^{-1}(x))] over x in Z_p, where
/// f_s(x) = f(x - s). Depends only on delta = alpha^{-1} beta; equals 1 when
/// delta lies in the symmetry subgroup.
double collision_probability(const CosetFunction& f, u64 s, const GroupElement& alpha,
                             const GroupElement& beta, const GroupSpec& spec);

struct ShiftResult {
    u64 shift = 0;
    bool verified = false;
    u64 redraws = 0;   // sample-set redraws beyond the first
    u64 trials = 0;    // coset-state trials across all attempts
    u64 queries = 0;   // oracle queries on the symmetry oracle
};

/// Recovers the hidden shift s from (f, f_s) by reducing to the hidden
/// conjugate problem for the symmetry subgroup, then checking the candidate
/// shift directly against the pair of functions. Redraws the sample set up to
/// three times if the reduction fails.
ShiftResult solve_hidden_shift(const CosetFunction& f, u64 s, u64 seed);

}  // namespace hspsim
