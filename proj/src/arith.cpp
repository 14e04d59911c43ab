#include "trinogen/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trinogen::arith {

namespace {

constexpr uint32_t kTrialBound = 1'000'000;

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> table = [] {
        std::vector<bool> composite(kTrialBound + 1, false);
        std::vector<uint32_t> primes;
        for (uint32_t i = 2; i <= kTrialBound; ++i) {
            if (composite[i]) continue;
            primes.push_back(i);
            for (uint64_t j = static_cast<uint64_t>(i) * i; j <= kTrialBound; j += i)
                composite[static_cast<size_t>(j)] = true;
        }
        return primes;
    }();
    return table;
}

bool miller_rabin_witness(uint64_t n, uint64_t a, uint64_t d, int s) {
    uint64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}

// Brent's cycle variant of Pollard rho with x -> x^2 + c.  Returns a
// nontrivial factor of composite odd n, retrying with c = 1, 2, 3, ...
// so results are reproducible.
uint64_t pollard_brent_u64(uint64_t n) {
    for (uint64_t c = 1;; ++c) {
        uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        const uint64_t limit = 1u << 7;
        while (g == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = addmod(mulmod(y, y, n), c, n);
            for (uint64_t j = 0; j < r && g == 1; j += limit) {
                ys = y;
                uint64_t count = std::min(limit, r - j);
                for (uint64_t i = 0; i < count; ++i) {
                    y = addmod(mulmod(y, y, n), c, n);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            do {
                ys = addmod(mulmod(ys, ys, n), c, n);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_u64_into(uint64_t n, std::vector<std::pair<uint64_t, int>>& out) {
    for (uint32_t p : small_primes()) {
        if (static_cast<uint64_t>(p) * p > n) break;
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n == 1) return;
    if (is_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    // n is composite with no factor below 10^6; split recursively.
    uint64_t d = pollard_brent_u64(n);
    std::vector<std::pair<uint64_t, int>> left, right;
    factor_u64_into(d, left);
    factor_u64_into(n / d, right);
    for (auto& [p, e] : left) out.emplace_back(p, e);
    for (auto& [p, e] : right) out.emplace_back(p, e);
}

void normalize(std::vector<std::pair<uint64_t, int>>& fs) {
    std::sort(fs.begin(), fs.end());
    std::vector<std::pair<uint64_t, int>> merged;
    for (auto& [p, e] : fs) {
        if (!merged.empty() && merged.back().first == p)
            merged.back().second += e;
        else
            merged.emplace_back(p, e);
    }
    fs = std::move(merged);
}

// Pollard rho over mpz for cofactors above 2^64, Brent cycle, bounded
// iteration count per parameter so a hard input fails fast instead of
// spinning.  Returns 0 when the budget is exhausted.
BigInt pollard_brent_big(const BigInt& n) {
    constexpr uint64_t kBudgetPerC = 1u << 22;
    for (uint64_t c = 1; c <= 8; ++c) {
        BigInt y = 2, x, ys, q = 1, g = 1;
        uint64_t r = 1, spent = 0;
        const uint64_t batch = 1u << 7;
        auto step = [&](BigInt& v) { v = (v * v + c) % n; };
        while (g == 1 && spent < kBudgetPerC) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) step(y);
            for (uint64_t j = 0; j < r && g == 1; j += batch) {
                ys = y;
                uint64_t count = std::min(batch, r - j);
                for (uint64_t i = 0; i < count; ++i) {
                    step(y);
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                spent += count;
            }
            r <<= 1;
        }
        if (spent >= kBudgetPerC) continue;
        if (g == n) {
            g = 1;
            do {
                step(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1 && spent++ < kBudgetPerC);
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

// Factors big n (all small primes already removed) into `out`; appends any
// irreducible-within-budget cofactors to `stuck`.
void factor_big_into(const BigInt& n, std::vector<std::pair<uint64_t, int>>& out,
                     std::vector<BigInt>& stuck) {
    if (n == 1) return;
    if (fits_u64(n)) {
        factor_u64_into(to_u64(n), out);
        return;
    }
    // A >64-bit perfect power has a much smaller base; peel that first.
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (uint64_t e = 2; e <= bit_length(n); ++e) {
            BigInt root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(e))) {
                std::vector<std::pair<uint64_t, int>> base;
                factor_big_into(root, base, stuck);
                for (auto& [p, ex] : base) out.emplace_back(p, ex * static_cast<int>(e));
                return;
            }
        }
    }
    // No certified primality above 2^64, so a split is mandatory.
    BigInt d = pollard_brent_big(n);
    if (d == 0) {
        stuck.push_back(n);
        return;
    }
    factor_big_into(d, out, stuck);
    factor_big_into(n / d, out, stuck);
}

uint64_t legendre_reduced(uint64_t a, uint64_t p) {
    // Euler's criterion; p is an odd prime.
    return powmod(a, (p - 1) / 2, p);
}

void require_odd_prime(uint64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw std::invalid_argument("modulus must be an odd prime: " + std::to_string(p));
}

}  // namespace

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 0) throw std::invalid_argument("powmod: zero modulus");
    if (m == 1) return 0;
    uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& m) {
    if (m < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
    if (exp < 0) throw std::invalid_argument("mod_pow: negative exponent");
    BigInt b = base % m;
    if (b < 0) b += m;
    BigInt r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

uint64_t mod_pow(int64_t base, uint64_t exp, uint64_t m) {
    if (m == 0) throw std::invalid_argument("mod_pow: zero modulus");
    auto b = static_cast<uint64_t>(((static_cast<__int128>(base) % m) + m) % m);
    return powmod(b, exp, m);
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // The first twelve primes form a deterministic witness set for all
    // 64-bit integers (Sorenson & Webster).
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (miller_rabin_witness(n, a, d, s)) return false;
    return true;
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (!fits_u64(n))
        throw std::domain_error("primality is only certified below 2^64; got " + n.get_str());
    return is_prime(to_u64(n));
}

Factorization factor(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor: n must be >= 1");
    Factorization f;
    f.value = BigInt(static_cast<unsigned long>(n));
    if (n > 1) factor_u64_into(n, f.factors);
    normalize(f.factors);
    return f;
}

Factorization factor(const BigInt& n) {
    if (n < 1) throw std::invalid_argument("factor: n must be >= 1");
    if (fits_u64(n)) return factor(to_u64(n));
    if (bit_length(n) > 128)
        throw std::domain_error("factor: inputs must be below 2^128; got " + n.get_str());
    Factorization f;
    f.value = n;
    BigInt rest = n;
    for (uint32_t p : small_primes()) {
        if (fits_u64(rest)) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            int e = 0;
            do {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
            f.factors.emplace_back(p, e);
        }
    }
    std::vector<BigInt> stuck;
    factor_big_into(rest, f.factors, stuck);
    normalize(f.factors);
    if (!stuck.empty()) {
        BigInt cof = 1;
        for (const BigInt& c : stuck) cof *= c;
        throw factor_incomplete(cof, f);
    }
    return f;
}

bool is_squarefree(uint64_t n) {
    if (n == 0) throw std::invalid_argument("is_squarefree: n must be >= 1");
    auto f = factor(n);
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const auto& pe) { return pe.second == 1; });
}

bool is_squarefree(const BigInt& n) {
    if (n < 1) throw std::invalid_argument("is_squarefree: n must be >= 1");
    if (fits_u64(n)) return is_squarefree(to_u64(n));
    auto f = factor(n);
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const auto& pe) { return pe.second == 1; });
}

int legendre(const BigInt& a, uint64_t p) {
    require_odd_prime(p);
    BigInt r = a % BigInt(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    uint64_t e = legendre_reduced(to_u64(r), p);
    if (e == 0) return 0;
    return e == 1 ? 1 : -1;
}

int legendre(int64_t a, uint64_t p) {
    require_odd_prime(p);
    auto r = static_cast<uint64_t>(((static_cast<__int128>(a) % p) + p) % p);
    uint64_t e = legendre_reduced(r, p);
    if (e == 0) return 0;
    return e == 1 ? 1 : -1;
}

int jacobi(uint64_t a, uint64_t n) {
    if (n == 0 || n % 2 == 0) throw std::invalid_argument("jacobi: n must be odd and positive");
    int t = 1;
    a %= n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            uint64_t r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

std::vector<BigInt> divisors_from(const Factorization& f) {
    std::vector<BigInt> divs{1};
    for (const auto& [p, e] : f.factors) {
        size_t base = divs.size();
        BigInt pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= static_cast<unsigned long>(p);
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::vector<uint64_t> divisors_u64(const Factorization& f) {
    if (!fits_u64(f.value))
        throw std::domain_error("divisors_u64: value exceeds 64 bits");
    auto big = divisors_from(f);
    std::vector<uint64_t> out;
    out.reserve(big.size());
    for (const BigInt& d : big) out.push_back(to_u64(d));
    return out;
}

uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    auto x = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (x > 0 && x > n / x) --x;
    while ((x + 1) <= n / (x + 1)) ++x;
    return x;
}

}  // namespace trinogen::arith
