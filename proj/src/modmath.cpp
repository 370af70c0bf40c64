#include "hspsim/modmath.hpp"

#include <algorithm>
#include <cmath>

namespace hspsim {

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % sp == 0) return n == sp;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Sinclair's base set is deterministic for all 64-bit integers.
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        u64 x = mod_pow(a % n, d, n);
        if (x <= 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mod_mul(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            unsigned m = 0;
            while (n % d == 0) { n /= d; ++m; }
            out.emplace_back(d, m);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

u64 multiplicative_order(u64 x, u64 p) {
    x %= p;
    if (x == 0) throw std::domain_error("multiplicative_order: x = 0 mod p");
    u64 order = p - 1;
    for (auto [f, m] : factorize(p - 1)) {
        for (unsigned i = 0; i < m; ++i) {
            if (mod_pow(x, order / f, p) == 1) order /= f;
            else break;
        }
    }
    return order;
}

u64 primitive_root(u64 p) {
    if (p == 2) return 1;
    auto factors = factorize(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [f, m] : factors) {
            (void)m;
            if (mod_pow(g, (p - 1) / f, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: no generator found (p not prime?)");
}

namespace {
constexpr u64 kDenseTableLimit = 1ULL << 20;
}

DlogTable::DlogTable(u64 p, u64 base) : p_(p), base_(base % p) {
    if (base_ == 0) throw std::invalid_argument("DlogTable: base = 0 mod p");
    order_ = multiplicative_order(base_, p_);
    if (p_ < kDenseTableLimit) {
        table_.assign(p_, -1);
        u64 x = 1;
        for (u64 e = 0; e < order_; ++e) {
            table_[x] = static_cast<std::int32_t>(e);
            x = mod_mul(x, base_, p_);
        }
    } else {
        bsgs_m_ = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order_))));
        baby_steps_.reserve(bsgs_m_ * 2);
        u64 x = 1;
        for (u64 j = 0; j < bsgs_m_; ++j) {
            baby_steps_.emplace(x, j);
            x = mod_mul(x, base_, p_);
        }
        giant_stride_ = mod_inv(mod_pow(base_, bsgs_m_, p_), p_);
    }
}

bool DlogTable::contains(u64 x) const {
    x %= p_;
    if (x == 0) return false;
    if (!table_.empty()) return table_[x] >= 0;
    return mod_pow(x, order_, p_) == 1;
}

u64 DlogTable::log(u64 x) const {
    x %= p_;
    if (x == 0) throw std::domain_error("DlogTable::log: x = 0 mod p");
    if (!table_.empty()) {
        auto e = table_[x];
        if (e < 0) throw std::domain_error("DlogTable::log: x not in <base>");
        return static_cast<u64>(e);
    }
    u64 y = x;
    for (u64 i = 0; i <= bsgs_m_; ++i) {
        auto it = baby_steps_.find(y);
        if (it != baby_steps_.end()) {
            u64 e = i * bsgs_m_ + it->second;
            if (e < order_ && mod_pow(base_, e, p_) == x) return e;
        }
        y = mod_mul(y, giant_stride_, p_);
    }
    throw std::domain_error("DlogTable::log: x not in <base>");
}

u64 discrete_log(u64 x, u64 base, u64 p) {
    return DlogTable(p, base).log(x);
}

}  // namespace hspsim
