#pragma once

#include <vector>

#include "hspsim/repr.hpp"

namespace hspsim {

/// Additive character chi_s(z) = w_p^{sz} paired with the multiplicative
/// character psi_t(gamma^z) = w_{p-1}^{tz}. The trivial multiplicative
/// character is t = 0.
struct CharacterPair {
    u64 p = 0;
    u64 s = 0;      // additive index in Z_p
    u64 t = 0;      // multiplicative index in Z_{p-1}
    u64 gamma = 0;  // generator of Z_p^*; 0 = smallest primitive root
};

/// Complete Gauss sum over Z_p^*: sum_z chi_s(z) psi_t(z). Modulus sqrt(p)
/// when both characters are nontrivial; degenerate values p-1 (both
/// trivial), -1 (only psi trivial), 0 (only chi trivial).
cplx gauss_sum(const CharacterPair& pair);

/// Incomplete sum over the order-q subgroup generated by a:
/// sum_{z=0}^{q-1} w_p^{t a^z}.
cplx incomplete_gauss_sum(u64 t, u64 a, u64 p);

/// Independent evaluation of the same sum, term by term via std::polar and
/// per-term exponentiation (cross-check path).
cplx incomplete_gauss_sum_direct(u64 t, u64 a, u64 p);

/// Projection-norm concentration: draws Haar-random unit vectors in C^dim,
/// measures how often | |pi v|^2 - r/d | exceeds delta * r/d for the
/// coordinate projector onto the first `rank` coordinates, and tabulates the
/// tail frequency against the bound 4 exp(-r delta^2 / 48).
struct ConcentrationResult {
    i64 rank = 0;
    i64 dim = 0;
    u64 num_vectors = 0;
    std::vector<double> deltas;
    std::vector<double> tail;   // empirical exceedance frequency per delta
    std::vector<double> bound;  // 4 exp(-rank delta^2 / 48)
    std::vector<double> sigma;  // binomial standard error of the bound value
};

/// Per-vector PRNG streams derived from (seed, vector index), so the result
/// is independent of any parallel chunking.
ConcentrationResult concentration_experiment(i64 rank, i64 dim, u64 num_vectors, u64 seed,
                                             std::vector<double> deltas = {0.25, 0.5, 1.0});

}  // namespace hspsim
