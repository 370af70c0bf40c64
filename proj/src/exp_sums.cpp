#include "hspsim/exp_sums.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hspsim {

cplx gauss_sum(const CharacterPair& pair) {
    const u64 p = pair.p;
    if (!is_prime(p)) throw std::invalid_argument("gauss_sum: p must be prime");
    u64 gamma = pair.gamma ? pair.gamma : primitive_root(p);
    RootTable wp(p), wq(p - 1);
    cplx acc = 0;
    u64 z = 1;
    for (u64 e = 0; e < p - 1; ++e) {
        acc += wp(static_cast<i64>(mod_mul(pair.s, z, p))) * wq(static_cast<i64>(pair.t * e % (p - 1)));
        z = mod_mul(z, gamma, p);
    }
    return acc;
}

cplx incomplete_gauss_sum(u64 t, u64 a, u64 p) {
    RootTable wp(p);
    u64 q = multiplicative_order(a, p);
    cplx acc = 0;
    u64 x = 1 % p;
    for (u64 z = 0; z < q; ++z) {
        acc += wp(static_cast<i64>(mod_mul(t, x, p)));
        x = mod_mul(x, a, p);
    }
    return acc;
}

cplx incomplete_gauss_sum_direct(u64 t, u64 a, u64 p) {
    u64 q = multiplicative_order(a, p);
    cplx acc = 0;
    const double tau = 2.0 * std::numbers::pi / static_cast<double>(p);
    for (u64 z = 0; z < q; ++z)
        acc += std::polar(1.0, tau * static_cast<double>(mod_mul(t, mod_pow(a, z, p), p)));
    return acc;
}

ConcentrationResult concentration_experiment(i64 rank, i64 dim, u64 num_vectors, u64 seed,
                                             std::vector<double> deltas) {
    if (rank < 0 || dim <= 0 || rank > dim)
        throw std::invalid_argument("concentration_experiment: need 0 <= rank <= dim");
    ConcentrationResult res;
    res.rank = rank;
    res.dim = dim;
    res.num_vectors = num_vectors;
    res.deltas = deltas;
    res.tail.assign(deltas.size(), 0.0);
    res.bound.resize(deltas.size());
    res.sigma.resize(deltas.size());

    const double mean = static_cast<double>(rank) / static_cast<double>(dim);
    std::vector<u64> exceed(deltas.size(), 0);
    for (u64 v = 0; v < num_vectors; ++v) {
        // Per-vector stream: results do not depend on evaluation order.
        std::mt19937_64 rng(seed + (v + 1) * 0x9e3779b97f4a7c15ULL);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double total = 0.0, head = 0.0;
        for (i64 i = 0; i < dim; ++i) {
            double re = gauss(rng), im = gauss(rng);
            double m = re * re + im * im;
            total += m;
            if (i < rank) head += m;
        }
        double val = head / total;  // |pi v|^2 for a uniform unit vector
        for (size_t j = 0; j < deltas.size(); ++j)
            if (std::abs(val - mean) > deltas[j] * mean) ++exceed[j];
    }
    for (size_t j = 0; j < deltas.size(); ++j) {
        res.tail[j] =
            num_vectors ? static_cast<double>(exceed[j]) / static_cast<double>(num_vectors) : 0.0;
        res.bound[j] = 4.0 * std::exp(-static_cast<double>(rank) * deltas[j] * deltas[j] / 48.0);
        double b = std::min(res.bound[j], 1.0);
        res.sigma[j] =
            num_vectors ? std::sqrt(b * (1.0 - b) / static_cast<double>(num_vectors)) : 0.0;
    }
    return res;
}

}  // namespace hspsim
