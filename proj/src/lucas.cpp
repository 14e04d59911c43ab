#include "trinogen/lucas.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace trinogen::lucas {

using arith::addmod;
using arith::mulmod;
using arith::submod;

namespace {

constexpr uint64_t kIterationModulusCap = 1'000'000;
constexpr uint64_t kSieveCap = 1'000'000'000;
constexpr uint64_t kChunkWidth = 1u << 20;

void require_params(const LucasParams& lp) {
    if (lp.k == 0) throw std::invalid_argument("k must be >= 1");
}

bool pair_is_identity(const std::pair<uint64_t, uint64_t>& uv, uint64_t m) {
    return uv.first == 0 && uv.second == 1 % m;
}

// Walks the orbit of (0, 1) one step at a time.  The pair map is invertible
// mod every m (u_{n-1} = u_{n+1} - k*u_n), so the orbit is purely periodic.
uint64_t period_by_iteration(uint64_t k, uint64_t m) {
    uint64_t km = k % m;
    uint64_t a = 0, b = 1 % m;
    const uint64_t cap = std::min<uint64_t>(m * m, 100'000'000);
    for (uint64_t t = 1; t <= cap; ++t) {
        uint64_t next = addmod(mulmod(km, b, m), a, m);
        a = b;
        b = next;
        if (a == 0 && b == 1 % m) return t;
    }
    throw std::domain_error("period: iteration cap exceeded for m=" + std::to_string(m));
}

// Least member of `candidates` (ascending) whose pair is (0, 1) mod m.
// Valid whenever the true period divides every sound candidate bound,
// because the set of t with identity pair is exactly the multiples of the
// period.
uint64_t first_identity_index(const LucasParams& lp, std::vector<uint64_t> candidates, uint64_t m) {
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (uint64_t t : candidates) {
        if (t == 0) continue;
        if (pair_is_identity(lucas_pair_mod(lp, t, m), m)) return t;
    }
    throw std::logic_error("period: no candidate index closed the orbit (m=" + std::to_string(m) + ")");
}

uint64_t period_odd_prime(const LucasParams& lp, uint64_t p) {
    uint64_t D = D_of(lp.k);
    int delta = arith::jacobi(D % p, p);
    if (delta == 0) {
        // Repeated-root case: the companion root alpha = k/2 satisfies
        // alpha^2 = -1 mod p, so the period divides 4p.
        return first_identity_index(lp, {1, 2, 4, p, 2 * p, 4 * p}, p);
    }
    uint64_t bound = delta == 1 ? p - 1 : 2 * (p + 1);
    return first_identity_index(lp, arith::divisors_u64(arith::factor(bound)), p);
}

uint64_t period_odd_prime_square(const LucasParams& lp, uint64_t p) {
    uint64_t pi_p = period_odd_prime(lp, p);
    // The period mod p^2 is either pi(p) or p*pi(p).
    return first_identity_index(lp, {pi_p, p * pi_p}, p * p);
}

struct SieveChunk {
    uint64_t lo, hi;  // inclusive prime range
    std::vector<WssVerdict> hits;
};

std::vector<uint32_t> primes_upto(uint64_t bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<uint32_t> primes;
    for (uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<uint32_t>(i));
        for (uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return primes;
}

}  // namespace

uint64_t D_of(uint64_t k) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    if (k > 0xFFFFFFFEull) throw std::domain_error("k too large for 64-bit discriminant: " + std::to_string(k));
    if (k % 2 == 1) return k * k + 4;
    uint64_t half = k / 2;
    return half * half + 1;
}

std::pair<uint64_t, uint64_t> lucas_pair_mod(const LucasParams& lp, uint64_t n, uint64_t m) {
    require_params(lp);
    if (m == 0) throw std::invalid_argument("modulus must be >= 1");
    uint64_t km = lp.k % m;
    uint64_t a = 0, b = 1 % m;  // (u_0, u_1)
    if (n == 0) return {a, b};
    int top = 63 - __builtin_clzll(n);
    for (int i = top; i >= 0; --i) {
        // (u_j, u_{j+1}) -> (u_{2j}, u_{2j+1}); these doubling forms are
        // specific to the constant term -1 of x^2 - kx - 1.
        uint64_t twice = mulmod(a, submod(addmod(b, b, m), mulmod(km, a, m), m), m);
        uint64_t twice1 = addmod(mulmod(a, a, m), mulmod(b, b, m), m);
        if ((n >> i) & 1) {
            a = twice1;
            b = addmod(mulmod(km, twice1, m), twice, m);
        } else {
            a = twice;
            b = twice1;
        }
    }
    return {a, b};
}

PeriodRecord period(const LucasParams& lp, uint64_t m) {
    require_params(lp);
    if (m == 0) throw std::invalid_argument("modulus must be >= 1");
    if (m < kIterationModulusCap) return {lp.k, m, period_by_iteration(lp.k, m)};
    if (m % 2 == 1 && arith::is_prime(m)) return {lp.k, m, period_odd_prime(lp, m)};
    uint64_t r = arith::isqrt_u64(m);
    if (r * r == m && r % 2 == 1 && arith::is_prime(r))
        return {lp.k, m, period_odd_prime_square(lp, r)};
    throw std::domain_error("period: modulus " + std::to_string(m) +
                            " is too large for stepping and is neither an odd prime nor its square");
}

WssVerdict wss_test(const LucasParams& lp, uint64_t p) {
    require_params(lp);
    if (!arith::is_prime(p)) throw std::invalid_argument("p must be prime: " + std::to_string(p));
    if (p > 0xFFFFFFFFull) throw std::domain_error("p^2 must fit in 64 bits: p=" + std::to_string(p));

    WssVerdict v;
    v.k = lp.k;
    v.p = p;
    uint64_t p2 = p * p;

    if (p == 2) {
        v.delta = 0;
        v.pi_p = period(lp, 2).pi;
        v.pi_p2 = period(lp, 4).pi;
        v.is_wss = lucas_pair_mod(lp, v.pi_p, 4).first == 0;
        v.method = WssMethod::definition;
        return v;
    }

    uint64_t D = D_of(lp.k);
    v.delta = arith::jacobi(D % p, p);
    if (v.delta == 0) {
        v.pi_p = period(lp, p).pi;
        v.pi_p2 = period(lp, p2).pi;
        v.is_wss = lucas_pair_mod(lp, v.pi_p, p2).first == 0;
        v.method = WssMethod::definition;
        return v;
    }

    // For odd p away from the discriminant, p^2 | u_{pi(p)} is equivalent
    // to p^2 | u_{p - delta}, which needs no period computation.
    uint64_t n = v.delta == 1 ? p - 1 : p + 1;
    v.u_residue = lucas_pair_mod(lp, n, p2).first;
    v.is_wss = *v.u_residue == 0;
    v.method = WssMethod::shifted_index;
    v.pi_p = period(lp, p).pi;
    v.pi_p2 = period(lp, p2).pi;
    return v;
}

std::vector<WssVerdict> wss_sieve(const LucasParams& lp, uint64_t p_min, uint64_t p_max,
                                  unsigned jobs, const SieveProgress& progress) {
    require_params(lp);
    if (p_min > p_max) throw std::invalid_argument("p_min must be <= p_max");
    if (p_max > kSieveCap) throw std::domain_error("sieve bound capped at 10^9");
    if (jobs == 0) throw std::invalid_argument("jobs must be >= 1");

    uint64_t D = D_of(lp.k);
    const auto base = primes_upto(arith::isqrt_u64(p_max) + 1);

    const uint64_t lo0 = std::max<uint64_t>(p_min, 2);
    if (lo0 > p_max) return {};
    const uint64_t chunk_count = (p_max - lo0) / kChunkWidth + 1;

    std::vector<SieveChunk> chunks(chunk_count);
    for (uint64_t c = 0; c < chunk_count; ++c) {
        chunks[c].lo = lo0 + c * kChunkWidth;
        chunks[c].hi = std::min(p_max, chunks[c].lo + kChunkWidth - 1);
    }

    std::atomic<uint64_t> next_chunk{0};
    std::atomic<uint64_t> primes_done{0};
    std::atomic<uint64_t> chunks_done{0};
    std::mutex progress_mutex;

    auto worker = [&] {
        std::vector<bool> composite;
        for (;;) {
            uint64_t c = next_chunk.fetch_add(1);
            if (c >= chunk_count) break;
            SieveChunk& ch = chunks[c];
            uint64_t width = ch.hi - ch.lo + 1;
            composite.assign(width, false);
            for (uint32_t q : base) {
                uint64_t q2 = static_cast<uint64_t>(q) * q;
                if (q2 > ch.hi) break;
                uint64_t start = std::max(q2, (ch.lo + q - 1) / q * q);
                for (uint64_t x = start; x <= ch.hi; x += q) composite[x - ch.lo] = true;
            }
            uint64_t counted = 0;
            for (uint64_t x = ch.lo; x <= ch.hi; ++x) {
                if (x < 2 || composite[x - ch.lo]) continue;
                ++counted;
                uint64_t p = x;
                bool hit;
                if (p == 2) {
                    hit = lp.k % 4 == 0;
                } else if (lp.k % p == 0) {
                    hit = p * p <= lp.k && lp.k % (p * p) == 0;
                } else if (D % p == 0) {
                    hit = wss_test(lp, p).is_wss;
                } else {
                    int delta = arith::jacobi(D % p, p);
                    uint64_t n = delta == 1 ? p - 1 : p + 1;
                    hit = lucas_pair_mod(lp, n, p * p).first == 0;
                }
                if (hit) ch.hits.push_back(wss_test(lp, p));
            }
            uint64_t done_p = primes_done.fetch_add(counted) + counted;
            uint64_t done_c = chunks_done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                progress(done_p, done_c, chunk_count);
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        unsigned n = std::min<uint64_t>(jobs, chunk_count);
        pool.reserve(n);
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<WssVerdict> out;
    for (const SieveChunk& ch : chunks)
        out.insert(out.end(), ch.hits.begin(), ch.hits.end());
    return out;
}

}  // namespace trinogen::lucas
