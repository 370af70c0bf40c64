#include "hspsim/hidden_shift.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hspsim {

namespace {

constexpr u64 kSeedMix = 0x9e3779b97f4a7c15ULL;

u64 shifted_value(const CosetFunction& f, u64 x, u64 s) {
    return f(mod_sub(x, s, f.p()));
}

u64 pulled_back(const CosetFunction& f, const GroupElement& alpha_inv, u64 x, u64 s) {
    u64 y = mod_add(mod_mul(alpha_inv.a, x, f.p()), alpha_inv.b, f.p());
    return shifted_value(f, y, s);
}

}  // namespace

CosetFunction::CosetFunction(u64 p, u64 r, u64 seed) : p_(p), r_(r) {
    if (r == 0 || (p - 1) % r != 0)
        throw std::invalid_argument("coset function requires r | p-1");
    gamma_ = primitive_root(p);
    dlog_ = std::make_shared<DlogTable>(p, gamma_);
    symbol_.resize(r);
    std::iota(symbol_.begin(), symbol_.end(), u64{0});
    std::mt19937_64 rng(seed);
    std::shuffle(symbol_.begin(), symbol_.end(), rng);
}

u64 CosetFunction::operator()(u64 x) const {
    x %= p_;
    if (x == 0) return r_;
    return symbol_[dlog_->log(x) % r_];
}

std::vector<u64> draw_sample_set(u64 p, u64 seed) {
    u64 m = static_cast<u64>(std::ceil(5.0 * std::log2(static_cast<double>(p))));
    std::mt19937_64 rng(seed);
    std::vector<u64> points(m);
    for (auto& x : points) x = rng() % p;
    return points;
}

HiddenOracle sampled_symmetry_oracle(const CosetFunction& f, u64 s,
                                     const std::vector<u64>& sample, const GroupSpec& spec) {
    const u64 p = f.p();
    u64 a = mod_pow(f.gamma(), f.r(), p);
    SubgroupDesc truth = a == 1 ? SubgroupDesc::trivial() : SubgroupDesc::conjugate(a, s);
    return HiddenOracle(
        [f, s, sample, spec](const GroupElement& alpha) {
            GroupElement ainv = inverse(alpha, spec);
            OracleSymbol sym;
            sym.reserve(sample.size());
            for (u64 x : sample) sym.push_back(pulled_back(f, ainv, x, s));
            return sym;
        },
        truth);
}

double collision_probability(const CosetFunction& f, u64 s, const GroupElement& alpha,
                             const GroupElement& beta, const GroupSpec& spec) {
    GroupElement ainv = inverse(alpha, spec);
    GroupElement binv = inverse(beta, spec);
    u64 hits = 0;
    for (u64 x = 0; x < f.p(); ++x)
        if (pulled_back(f, ainv, x, s) == pulled_back(f, binv, x, s)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(f.p());
}

ShiftResult solve_hidden_shift(const CosetFunction& f, u64 s, u64 seed) {
    const u64 p = f.p();
    auto spec = GroupSpec::affine(p, f.gamma());
    u64 a = mod_pow(f.gamma(), f.r(), p);
    if (a == 1)
        throw std::invalid_argument("hidden shift requires a nontrivial symmetry subgroup");

    ShiftResult out;
    std::mt19937_64 probe_rng(seed ^ 0x5bf03635d2d54f6bULL);
    for (u64 attempt = 0; attempt < 3; ++attempt) {
        auto sample = draw_sample_set(p, seed + (attempt + 1) * kSeedMix);
        auto oracle = sampled_symmetry_oracle(f, s, sample, spec);
        auto r = solve_hcp_affine(oracle, a, spec, seed + (attempt + 11) * kSeedMix, 200);
        out.trials += r.trials;
        out.queries += oracle.queries();
        if (r.verified) {
            u64 cand = r.recovered.b;
            // Check the candidate shift directly against the function pair.
            bool ok = true;
            for (int i = 0; i < 96 && ok; ++i) {
                u64 x = probe_rng() % p;
                ok = shifted_value(f, x, cand) == shifted_value(f, x, s);
            }
            if (ok) {
                out.shift = cand;
                out.verified = true;
                return out;
            }
        }
        ++out.redraws;
    }
    return out;
}

}  // namespace hspsim
