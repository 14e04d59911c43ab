#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "trinogen/arith.hpp"

using namespace trinogen;
using namespace trinogen::arith;

TEST_CASE("primality on known values") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(13));
    CHECK(is_prime(1546463));
    CHECK(oracle::naive_is_prime(1546463));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(85));
    CHECK_FALSE(is_prime(1546465));
    CHECK(is_prime(2147483647));           // 2^31 - 1
    CHECK(is_prime(18446744073709551557ull));  // largest 64-bit prime
    CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2,3,5,7
}

TEST_CASE("primality agrees with trial division") {
    for (uint64_t n = 0; n < 20000; ++n) CHECK(is_prime(n) == oracle::naive_is_prime(n));
}

TEST_CASE("big primality rejects oversized input") {
    BigInt big = BigInt(1) << 70;
    CHECK_THROWS_AS(is_prime(big), std::domain_error);
    CHECK(is_prime(BigInt(1546463)));
    CHECK_FALSE(is_prime(BigInt(-7)));
}

TEST_CASE("factor on known values") {
    auto f = factor(static_cast<uint64_t>(80782));
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == std::pair<uint64_t, int>{2, 1});
    CHECK(f.factors[1] == std::pair<uint64_t, int>{13, 2});
    CHECK(f.factors[2] == std::pair<uint64_t, int>{239, 1});

    CHECK(factor(static_cast<uint64_t>(1)).factors.empty());
    auto g = factor(static_cast<uint64_t>(85));
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0].first == 5);
    CHECK(g.factors[1].first == 17);
    CHECK_THROWS_AS(factor(static_cast<uint64_t>(0)), std::invalid_argument);
}

TEST_CASE("factor round-trips and certifies primes on random 64-bit input") {
    std::mt19937_64 rng(0x5eedull);
    for (int trial = 0; trial < 10000; ++trial) {
        uint64_t n = (rng() >> 1) | 1;  // odd, < 2^63
        if (n < 2) continue;
        auto f = factor(n);
        BigInt prod = 1;
        uint64_t prev = 0;
        for (auto& [p, e] : f.factors) {
            CHECK(p > prev);
            prev = p;
            CHECK(is_prime(p));
            for (int i = 0; i < e; ++i) prod *= static_cast<unsigned long>(p);
        }
        CHECK(prod == f.value);
        CHECK(f.value == BigInt(static_cast<unsigned long>(n)));
    }
}

TEST_CASE("factor matches trial division on small input") {
    for (uint64_t n = 1; n < 3000; ++n) {
        auto f = factor(n);
        CHECK(f.factors == oracle::trial_factor(n));
    }
}

TEST_CASE("big factor handles >64-bit values with small prime content") {
    BigInt n = (BigInt(1) << 70) * 3 * 3 * 5;  // 2^70 * 45
    auto f = factor(n);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0] == std::pair<uint64_t, int>{2, 70});
    CHECK(f.factors[1] == std::pair<uint64_t, int>{3, 2});
    CHECK(f.factors[2] == std::pair<uint64_t, int>{5, 1});

    // Perfect square of a 40-bit prime: certifiable via the power peel.
    BigInt p(static_cast<unsigned long>(1099511627791ull));  // prime just above 2^40
    auto g = factor(p * p);
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0] == std::pair<uint64_t, int>{1099511627791ull, 2});

    CHECK_THROWS_AS(factor(BigInt(1) << 129), std::domain_error);
}

TEST_CASE("squarefree detection") {
    CHECK(is_squarefree(static_cast<uint64_t>(5)));
    CHECK(is_squarefree(static_cast<uint64_t>(85)));
    CHECK_FALSE(is_squarefree(static_cast<uint64_t>(12)));
    CHECK_FALSE(is_squarefree(static_cast<uint64_t>(104976)));
    CHECK(is_squarefree(static_cast<uint64_t>(1)));
    for (uint64_t n = 1; n < 2000; ++n) {
        bool brute = true;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % (d * d) == 0) brute = false;
        CHECK(is_squarefree(n) == brute);
    }
}

TEST_CASE("legendre symbol on known values and against square search") {
    CHECK(legendre(static_cast<int64_t>(5), 3) == -1);
    CHECK(legendre(static_cast<int64_t>(2), 13) == -1);
    CHECK(legendre(static_cast<int64_t>(4), 7) == 1);
    CHECK(legendre(static_cast<int64_t>(21), 7) == 0);
    CHECK(legendre(BigInt(-1), 13) == 1);
    CHECK(legendre(BigInt(-1), 7) == -1);
    CHECK_THROWS_AS(legendre(static_cast<int64_t>(3), 4), std::invalid_argument);
    CHECK_THROWS_AS(legendre(static_cast<int64_t>(3), 15), std::invalid_argument);
    CHECK_THROWS_AS(legendre(static_cast<int64_t>(3), 2), std::invalid_argument);

    for (uint64_t p = 3; p < 200; p += 2) {
        if (!is_prime(p)) continue;
        for (int64_t a = -static_cast<int64_t>(p); a <= static_cast<int64_t>(2 * p); ++a) {
            CHECK(legendre(a, p) == oracle::brute_legendre(a, p));
            CHECK(legendre(BigInt(static_cast<long>(a)), p) == oracle::brute_legendre(a, p));
        }
    }
}

TEST_CASE("jacobi agrees with legendre on odd primes") {
    for (uint64_t p = 3; p < 200; p += 2) {
        if (!is_prime(p)) continue;
        for (uint64_t a = 0; a < p; ++a)
            CHECK(jacobi(a, p) == legendre(static_cast<int64_t>(a), p));
    }
    CHECK(jacobi(2, 15) == 1);   // composite modulus is allowed
    CHECK(jacobi(5, 9) == 1);
    CHECK_THROWS_AS(jacobi(3, 8), std::invalid_argument);
}

TEST_CASE("mod_pow on known values and against the naive loop") {
    CHECK(mod_pow(static_cast<int64_t>(2), 10, 1000) == 24);
    CHECK(mod_pow(static_cast<int64_t>(5), 0, 7) == 1);
    CHECK(mod_pow(static_cast<int64_t>(-2), 3, 7) == 6);  // (-8) mod 7
    CHECK(mod_pow(BigInt(3), BigInt(169), BigInt(169)) % 13 == 3);  // Fermat in base 13
    CHECK_THROWS_AS(mod_pow(BigInt(2), BigInt(-1), BigInt(7)), std::invalid_argument);
    CHECK_THROWS_AS(mod_pow(BigInt(2), BigInt(3), BigInt(1)), std::invalid_argument);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 1000; ++t) {
        uint64_t b = rng() % 100000;
        uint64_t e = rng() % 500;
        uint64_t m = 2 + rng() % 1000000;
        CHECK(powmod(b, e, m) == oracle::naive_powmod(b, e, m));
    }
}

TEST_CASE("divisor enumeration") {
    auto d1 = divisors_u64(factor(static_cast<uint64_t>(1)));
    CHECK(d1 == std::vector<uint64_t>{1});
    auto d12 = divisors_u64(factor(static_cast<uint64_t>(12)));
    CHECK(d12 == std::vector<uint64_t>{1, 2, 3, 4, 6, 12});
    auto d28 = divisors_u64(factor(static_cast<uint64_t>(28)));
    CHECK(d28 == std::vector<uint64_t>{1, 2, 4, 7, 14, 28});

    for (uint64_t n = 1; n <= 500; ++n) {
        auto divs = divisors_u64(factor(n));
        std::vector<uint64_t> brute;
        for (uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) brute.push_back(d);
        CHECK(divs == brute);
    }
}

TEST_CASE("integer square root") {
    CHECK(isqrt_u64(0) == 0);
    CHECK(isqrt_u64(1) == 1);
    CHECK(isqrt_u64(35) == 5);
    CHECK(isqrt_u64(36) == 6);
    CHECK(isqrt_u64(UINT64_MAX) == 4294967295ull);
    for (uint64_t n = 0; n < 70000; ++n) {
        uint64_t r = isqrt_u64(n);
        CHECK(r * r <= n);
        CHECK((r + 1) * (r + 1) > n);
    }
}
