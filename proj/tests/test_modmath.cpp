#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hspsim/modmath.hpp"

using namespace hspsim;

TEST_CASE("mod_mul / mod_pow against wide arithmetic") {
    CHECK(mod_mul(0xffffffffffffULL, 0xfffffffffULL, 1000000007ULL) ==
          (static_cast<unsigned __int128>(0xffffffffffffULL) * 0xfffffffffULL) % 1000000007ULL);
    CHECK(mod_pow(5, 4725, 10007) == 9999);  // sympy: discrete_log(10007, 9999, 5)
    CHECK(mod_pow(2, 10, 1) == 0);
    CHECK(mod_pow(0, 0, 7) == 1);
}

TEST_CASE("mod_inv") {
    for (u64 p : {7ULL, 23ULL, 103ULL, 10007ULL}) {
        for (u64 x = 1; x < std::min<u64>(p, 200); ++x)
            CHECK(mod_mul(x, mod_inv(x, p), p) == 1);
    }
    CHECK_THROWS_AS(mod_inv(0, 7), std::domain_error);
}

TEST_CASE("is_prime") {
    CHECK(is_prime(2));
    CHECK(is_prime(7));
    CHECK(is_prime(23));
    CHECK(is_prime(103));
    CHECK(is_prime(10007));
    CHECK(is_prime(5003));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(10005));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
    CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
}

TEST_CASE("factorize") {
    using F = std::vector<std::pair<u64, unsigned>>;
    CHECK(factorize(1) == F{});
    CHECK(factorize(12) == F{{2, 2}, {3, 1}});
    CHECK(factorize(10006) == F{{2, 1}, {5003, 1}});
    CHECK(factorize(102) == F{{2, 1}, {3, 1}, {17, 1}});
    CHECK(factorize(28) == F{{2, 2}, {7, 1}});
}

TEST_CASE("multiplicative_order and primitive_root") {
    CHECK(primitive_root(7) == 3);    // sympy primitive_root
    CHECK(primitive_root(23) == 5);
    CHECK(primitive_root(29) == 2);
    CHECK(primitive_root(103) == 5);
    CHECK(primitive_root(10007) == 5);
    CHECK(multiplicative_order(4, 103) == 51);  // sympy n_order
    CHECK(multiplicative_order(46, 103) == 3);
    CHECK(multiplicative_order(72, 103) == 17);
    CHECK(multiplicative_order(1, 103) == 1);
    for (u64 p : {7ULL, 23ULL, 103ULL}) {
        u64 g = primitive_root(p);
        CHECK(multiplicative_order(g, p) == p - 1);
    }
}

TEST_CASE("DlogTable dense and BSGS agree with powers") {
    std::mt19937_64 rng(7);
    for (u64 p : {103ULL, 10007ULL}) {
        DlogTable full(p, primitive_root(p));
        CHECK(full.order() == p - 1);
        for (int i = 0; i < 50; ++i) {
            u64 e = rng() % (p - 1);
            u64 x = mod_pow(full.base(), e, p);
            CHECK(full.log(x) == e);
            CHECK(full.contains(x));
        }
    }
    CHECK(DlogTable(103, 5).log(17) == 70);  // sympy discrete_log

    // Proper subgroup: membership must be detected.
    DlogTable sub(103, 72);  // order 17
    CHECK(sub.order() == 17);
    CHECK(sub.contains(1));
    CHECK_FALSE(sub.contains(5));
    CHECK_THROWS_AS(sub.log(5), std::domain_error);

    // Large prime exercises the BSGS path.
    u64 big = 1000000007ULL;
    DlogTable bsgs(big, primitive_root(big));
    for (int i = 0; i < 20; ++i) {
        u64 e = rng() % (big - 1);
        CHECK(bsgs.log(mod_pow(bsgs.base(), e, big)) == e);
    }
    CHECK(discrete_log(mod_pow(5, 123456, big), 5, big) == 123456);
}
