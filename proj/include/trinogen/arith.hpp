// Modular kernels, primality, factorization, quadratic residue symbols.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trinogen/bigint.hpp"

namespace trinogen::arith {

/// (a + b) mod m, safe for any uint64_t operands already reduced mod m.
inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) + b) % m);
}

/// (a - b) mod m for reduced operands.
inline uint64_t submod(uint64_t a, uint64_t b, uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}

/// (a * b) mod m via 128-bit product.
inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

/// base^exp mod m (m >= 1); 0^0 = 1 by convention.
uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);

/// base^exp mod m for arbitrary-precision operands; exp >= 0, m >= 2.
/// Negative bases are reduced into [0, m) first.
BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& m);

/// Signed-base convenience wrapper over powmod.
uint64_t mod_pow(int64_t base, uint64_t exp, uint64_t m);

/// Deterministic Miller-Rabin, valid for every n < 2^64.
bool is_prime(uint64_t n);

/// Primality for big operands.  Only inputs below 2^64 are certified;
/// anything larger is rejected (domain_error) rather than answered
/// probabilistically.
bool is_prime(const BigInt& n);

/// A verified prime factorization: value = prod(p_i^e_i), p_i ascending.
/// Every listed prime has passed the deterministic primality test, so all
/// primes fit in 64 bits even when value does not.
struct Factorization {
    BigInt value;
    std::vector<std::pair<uint64_t, int>> factors;
};

/// Thrown when a >64-bit cofactor resists the factoring budget.  The caller
/// decides whether a partial answer is usable.
struct factor_incomplete : std::runtime_error {
    BigInt cofactor;
    Factorization partial;
    factor_incomplete(BigInt c, Factorization p)
        : std::runtime_error("cofactor not factored within budget: " + c.get_str()),
          cofactor(std::move(c)),
          partial(std::move(p)) {}
};

/// Complete factorization for n >= 1.  Trial division up to 10^6, then
/// Brent-cycle Pollard rho with a deterministic parameter schedule.
Factorization factor(uint64_t n);

/// Factorization for big n (1 <= n < 2^128).  Inputs at or above 2^128 are
/// rejected; a stubborn >64-bit cofactor raises factor_incomplete.
Factorization factor(const BigInt& n);

bool is_squarefree(uint64_t n);
bool is_squarefree(const BigInt& n);

/// Legendre symbol (a/p) in {-1, 0, 1}; p must be an odd prime (checked).
int legendre(const BigInt& a, uint64_t p);
int legendre(int64_t a, uint64_t p);

/// Jacobi symbol (a/n) for odd n >= 1; no primality requirement.
int jacobi(uint64_t a, uint64_t n);

/// All positive divisors of f.value, ascending.
std::vector<BigInt> divisors_from(const Factorization& f);

/// Divisor list narrowed to uint64_t; requires f.value < 2^64.
std::vector<uint64_t> divisors_u64(const Factorization& f);

/// floor(sqrt(n)) for uint64_t.
uint64_t isqrt_u64(uint64_t n);

}  // namespace trinogen::arith
