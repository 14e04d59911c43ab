// Arbitrary-precision integer alias and small conversion helpers.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace trinogen {

using BigInt = mpz_class;

/// True when 0 <= x < 2^64.
inline bool fits_u64(const BigInt& x) {
    return mpz_sgn(x.get_mpz_t()) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

/// Narrow to uint64_t; caller must check fits_u64 first.
inline uint64_t to_u64(const BigInt& x) {
    if (!fits_u64(x)) throw std::domain_error("value does not fit in 64 bits: " + x.get_str());
    return mpz_get_ui(x.get_mpz_t());
}

/// Number of bits in |x| (0 for x == 0).
inline size_t bit_length(const BigInt& x) {
    if (mpz_sgn(x.get_mpz_t()) == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

/// base^exp over the integers.
inline BigInt big_pow(const BigInt& base, uint64_t exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

}  // namespace trinogen
