#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace hspsim {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mod_mul(u64 x, u64 y, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(x) * y) % m);
}

inline u64 mod_pow(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mod_mul(r, base, m);
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline u64 mod_add(u64 x, u64 y, u64 m) { return (x + y) % m; }
inline u64 mod_sub(u64 x, u64 y, u64 m) { return (x + m - y % m) % m; }

/// Inverse of x modulo prime p (Fermat).
inline u64 mod_inv(u64 x, u64 p) {
    if (x % p == 0) throw std::domain_error("mod_inv: zero has no inverse");
    return mod_pow(x % p, p - 2, p);
}

/// Deterministic Miller-Rabin, valid for all 64-bit n.
bool is_prime(u64 n);

/// Prime factorization by trial division, sorted ascending, with multiplicity.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// Multiplicative order of x mod prime p. Requires x != 0 mod p.
u64 multiplicative_order(u64 x, u64 p);

/// Smallest generator of Z_p^*.
u64 primitive_root(u64 p);

/// Discrete logarithms to a fixed base modulo a prime.
///
/// For p below 2^20 a full lookup table over <base> is built; above that
/// baby-step giant-step is used.
class DlogTable {
public:
    DlogTable(u64 p, u64 base);

    u64 p() const { return p_; }
    u64 base() const { return base_; }
    u64 order() const { return order_; }

    /// Exponent e with base^e = x (mod p), 0 <= e < order(base).
    /// Throws std::domain_error when x is not in <base>.
    u64 log(u64 x) const;

    bool contains(u64 x) const;

private:
    u64 p_, base_, order_;
    std::vector<std::int32_t> table_;            // dense, p < 2^20
    std::unordered_map<u64, u64> baby_steps_;    // BSGS otherwise
    u64 giant_stride_ = 0;                       // base^{-m}
    u64 bsgs_m_ = 0;
};

/// One-shot discrete log; builds a table internally.
u64 discrete_log(u64 x, u64 base, u64 p);

}  // namespace hspsim
