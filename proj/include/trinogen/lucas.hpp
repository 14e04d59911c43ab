// The sequence u_0 = 0, u_1 = 1, u_{n+1} = k*u_n + u_{n-1}: modular terms,
// periods, and square-divisibility tests at primes.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "trinogen/arith.hpp"

namespace trinogen::lucas {

struct LucasParams {
    uint64_t k;  // recurrence multiplier, k >= 1
};

/// Squarefree-kernel-style discriminant attached to k: k^2 + 4 for odd k,
/// (k/2)^2 + 1 for even k.  Defined for 1 <= k <= 2^32 - 2.
uint64_t D_of(uint64_t k);

/// (u_n mod m, u_{n+1} mod m) by binary doubling in O(log n) steps.
std::pair<uint64_t, uint64_t> lucas_pair_mod(const LucasParams& lp, uint64_t n, uint64_t m);

struct PeriodRecord {
    uint64_t k;
    uint64_t m;
    uint64_t pi;  // least t >= 1 with (u_t, u_{t+1}) = (0, 1) mod m
};

/// Period of the pair orbit mod m.  Supported moduli: any m < 10^6 by
/// stepping, odd primes and squares of odd primes at any 64-bit size via
/// divisor search.  Other large shapes are rejected.
PeriodRecord period(const LucasParams& lp, uint64_t m);

enum class WssMethod {
    definition,      // u_{pi(p)} tested mod p^2 directly
    shifted_index,   // u_{p - delta} tested mod p^2
    unit_congruence  // reserved: root-power route used by cross-checks
};

struct WssVerdict {
    uint64_t k = 0;
    uint64_t p = 0;
    int delta = 0;  // quadratic character of the discriminant at p; 0 when p divides it or p = 2
    uint64_t pi_p = 0;
    uint64_t pi_p2 = 0;
    std::optional<uint64_t> u_residue;  // u_{p-delta} mod p^2 when the shifted-index route applies
    bool is_wss = false;
    WssMethod method = WssMethod::definition;
};

/// Does p^2 divide u_{pi(p)}?  p must be prime and below 2^32 so that p^2
/// stays within 64-bit arithmetic.
WssVerdict wss_test(const LucasParams& lp, uint64_t p);

using SieveProgress = std::function<void(uint64_t primes_done, uint64_t chunks_done, uint64_t chunks_total)>;

/// All primes p in [p_min, p_max] passing wss_test, ascending.  Output is
/// identical for any job count: the range is cut into fixed chunks and
/// results are merged in chunk order.  p_max is capped at 10^9.
std::vector<WssVerdict> wss_sieve(const LucasParams& lp, uint64_t p_min, uint64_t p_max,
                                  unsigned jobs = 1, const SieveProgress& progress = {});

}  // namespace trinogen::lucas
