#include "trinogen/monogenic.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "trinogen/arith.hpp"
#include "trinogen/lucas.hpp"
#include "trinogen/quadfield.hpp"

namespace trinogen::monogenic {

using polyfp::IntPoly;
using polyfp::PolyFp;
using polyfp::Trinomial;

const char* rule_name(IndexRule r) {
    switch (r) {
        case IndexRule::jks1: return "jks1";
        case IndexRule::jks2: return "jks2";
        case IndexRule::jks3: return "jks3";
        case IndexRule::jks4: return "jks4";
        case IndexRule::jks5: return "jks5";
        case IndexRule::dedekind: return "dedekind";
        case IndexRule::square_free: return "square_free";
    }
    return "?";
}

const char* basis_name(IrreducibilityBasis b) {
    switch (b) {
        case IrreducibilityBasis::quadratic_criterion: return "quadratic_criterion";
        case IrreducibilityBasis::family_lemma: return "family_lemma";
        case IrreducibilityBasis::attested: return "attested";
        case IrreducibilityBasis::refuted: return "refuted";
    }
    return "?";
}

namespace {

BigInt big_of(uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

bool divides(const BigInt& d, const BigInt& x) {
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t());
}

BigInt exact_quot(const BigInt& x, const BigInt& d, const char* what) {
    if (!divides(d, x)) throw std::logic_error(std::string(what) + " is not divisible as required");
    BigInt q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return q;
}

BigInt mod_nonneg(const BigInt& x, const BigInt& m) {
    BigInt r = x % m;
    if (r < 0) r += m;
    return r;
}

/// Largest e with p^e | x, for x != 0.
int valuation(const BigInt& x, const BigInt& p) {
    if (x == 0) throw std::logic_error("valuation of zero requested");
    BigInt a = abs(x);
    int v = 0;
    while (divides(p, a)) {
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

int valuation_u64(uint64_t x, uint64_t p) {
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

uint64_t u64_pow(uint64_t base, int exp) {
    uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

/// disc(t) = +-B^(M-1) D^r, so p | disc without forming the discriminant.
bool prime_divides_disc(const Trinomial& t, const BigInt& bp) {
    return (t.M >= 2 && divides(bp, t.B)) || divides(bp, t.D);
}

/// The attached discriminant of k: k^2+4 for odd k, (k/2)^2+1 for even.
BigInt attached_disc(const BigInt& k) {
    if (k % 2 != 0) return k * k + 4;
    BigInt half = k / 2;
    return half * half + 1;
}

/// Squarefreeness of the attached discriminant, or empty when the
/// factorization ran out of budget.
std::optional<bool> attached_disc_squarefree(const BigInt& k) {
    try {
        return arith::is_squarefree(attached_disc(k));
    } catch (const arith::factor_incomplete&) {
        return std::nullopt;
    } catch (const std::domain_error&) {
        return std::nullopt;  // beyond the factorization input cap
    }
}

}  // namespace

std::optional<bool> family_irreducible(uint64_t k, uint64_t s, uint32_t n) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    if (k == 4) throw std::invalid_argument("k = 4 is excluded: the attached unit is not fundamental");
    if (s == 0) throw std::invalid_argument("s must be >= 1");
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    if (arith::is_squarefree(attached_disc(big_of(k)))) return true;
    return std::nullopt;  // the unit argument is inapplicable; no verdict
}

PrimeIndexVerdict jks_check(const Trinomial& t, uint64_t p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("p must be prime");
    const BigInt bp = big_of(p);
    const BigInt bp2 = bp * bp;
    if (!prime_divides_disc(t, bp))
        throw std::invalid_argument("p does not divide the discriminant");

    const bool pA = divides(bp, t.A);
    const bool pB = divides(bp, t.B);
    const bool pM = static_cast<uint64_t>(t.M) % p == 0;

    PrimeIndexVerdict v;
    v.p = p;

    if (pA && pB) {
        v.rule = IndexRule::jks1;
        v.divides_index = divides(bp2, t.B);
        v.detail = v.divides_index ? "p^2 divides B" : "p^2 does not divide B";
        return v;
    }

    if (pA && !pB) {
        v.rule = IndexRule::jks2;
        int e = valuation_u64(static_cast<uint64_t>(t.N), p);
        if (e == 0) throw std::logic_error("case-2 invariant violated: p must divide N");
        uint64_t pe = u64_pow(p, e);  // p^e divides N, so it stays small
        BigInt A2 = exact_quot(t.A, bp, "A");
        BigInt negB = -t.B;
        BigInt B1 = exact_quot(t.B + big_pow(negB, pe), bp, "the case-2 carry of B");
        bool first = divides(bp, A2) && !divides(bp, B1);
        BigInt inner = mod_nonneg(arith::mod_pow(negB, big_of(t.M1), bp) *
                                          arith::mod_pow(A2, big_of(t.N1), bp) -
                                      arith::mod_pow(-B1, big_of(t.N1), bp),
                                  bp);
        BigInt term = mod_nonneg(A2, bp) * inner % bp;
        bool second = term != 0;
        v.divides_index = !(first || second);
        v.detail = std::string("A/p and carried B: first condition ") +
                   (first ? "holds" : "fails") + ", product term mod p = " + term.get_str();
        return v;
    }

    if (!pA && pB) {
        v.rule = IndexRule::jks3;
        int j = valuation_u64(static_cast<uint64_t>(t.N - t.M), p);  // may be 0
        uint64_t pj = u64_pow(p, j);
        BigInt negA = -t.A;
        BigInt A1 = exact_quot(t.A + big_pow(negA, pj), bp, "the case-3 carry of A");
        BigInt B2 = exact_quot(t.B, bp, "B");
        bool first = divides(bp, A1) && !divides(bp, B2);
        BigInt inner = mod_nonneg(arith::mod_pow(negA, big_of(t.M1), bp) *
                                          arith::mod_pow(A1, big_of(t.N1 - t.M1), bp) -
                                      arith::mod_pow(-B2, big_of(t.N1 - t.M1), bp),
                                  bp);
        BigInt term = mod_nonneg(A1, bp) * arith::mod_pow(B2, big_of(t.M - 1), bp) % bp;
        term = term * inner % bp;
        bool second = term != 0;
        v.divides_index = !(first || second);
        v.detail = std::string("carried A and B/p: first condition ") +
                   (first ? "holds" : "fails") + ", product term mod p = " + term.get_str();
        return v;
    }

    if (pM) {
        v.rule = IndexRule::jks4;
        int m = std::min(valuation_u64(static_cast<uint64_t>(t.N), p),
                         valuation_u64(static_cast<uint64_t>(t.M), p));
        if (m == 0) throw std::logic_error("case-4 invariant violated: p must divide N");
        uint64_t pm = u64_pow(p, m);  // p | M forces p <= M, so p^m <= N
        const uint64_t N0 = static_cast<uint64_t>(t.N) / pm;
        const uint64_t M0 = static_cast<uint64_t>(t.M) / pm;

        std::vector<uint64_t> c1(N0 + 1, 0);
        c1[0] = to_u64(mod_nonneg(t.B, bp));
        c1[M0] = to_u64((big_of(c1[M0]) + mod_nonneg(t.A, bp)) % bp);
        c1[N0] = to_u64((big_of(c1[N0]) + 1) % bp);
        PolyFp reduced(p, std::move(c1));

        // carry = (A x^M + B + (-A x^(M0) - B)^(p^m)) / p, assembled mod p^2
        // term by term so the exact division by p happens coefficient-wise.
        BigInt negA = mod_nonneg(-t.A, bp2);
        BigInt negB = mod_nonneg(-t.B, bp2);
        std::vector<BigInt> acc(static_cast<size_t>(t.M) + 1, BigInt(0));
        for (uint64_t i = 0; i <= pm; ++i) {
            BigInt binom;
            mpz_bin_uiui(binom.get_mpz_t(), pm, i);
            BigInt c = binom % bp2 * arith::mod_pow(negA, big_of(i), bp2) % bp2 *
                       arith::mod_pow(negB, big_of(pm - i), bp2) % bp2;
            acc[M0 * i] = (acc[M0 * i] + c) % bp2;
        }
        acc[t.M] = (acc[t.M] + mod_nonneg(t.A, bp2)) % bp2;
        acc[0] = (acc[0] + mod_nonneg(t.B, bp2)) % bp2;
        std::vector<uint64_t> c2(acc.size(), 0);
        for (size_t i = 0; i < acc.size(); ++i)
            c2[i] = to_u64(mod_nonneg(exact_quot(acc[i], bp, "the case-4 carry"), bp));
        PolyFp carry(p, std::move(c2));

        PolyFp g = polyfp::poly_gcd_fp(reduced, carry);
        v.divides_index = g.degree() != 0;
        v.detail = v.divides_index
                       ? "reduced trinomial and carry share the factor " + g.to_string() + " mod p"
                       : "reduced trinomial and carry are coprime mod p";
        return v;
    }

    v.rule = IndexRule::jks5;
    BigInt first = big_pow(big_of(t.N1), t.N1) * big_pow(t.B, t.N1 - t.M1);
    BigInt second = big_pow(big_of(t.M1), t.M1) * big_pow(big_of(t.N1 - t.M1), t.N1 - t.M1) *
                    big_pow(t.A, t.N1);
    BigInt core;  // = D / r^N1
    if (t.N1 % 2 == 0) {
        core = first - second;
    } else {
        core = first + second;
    }
    if (core * big_pow(big_of(t.r), t.N1) != t.D)
        throw std::logic_error("discriminant core does not rescale to D");
    v.divides_index = divides(bp2, core);
    v.detail = v.divides_index ? "p^2 divides D / r^N1" : "p^2 does not divide D / r^N1";
    return v;
}

PrimeIndexVerdict dedekind_check(const IntPoly& f, uint64_t p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("p must be prime");
    if (f.degree() < 1 || !f.is_monic())
        throw std::invalid_argument("the factor-and-lift criterion requires a monic polynomial of degree >= 1");

    PolyFp fbar = PolyFp::from_int(f, p);
    auto parts = polyfp::factor_mod_p(fbar);
    PolyFp gbar = PolyFp::monomial(p, 0, 1);
    for (const auto& [q, mult] : parts) gbar = gbar * q;
    auto [hbar, rem] = fbar.divmod(gbar);
    if (!rem.is_zero()) throw std::logic_error("distinct-factor product does not divide the reduction");

    IntPoly g = polyfp::lift(gbar);
    IntPoly h = polyfp::lift(hbar);
    IntPoly num = g * h - f;
    const BigInt bp = big_of(p);
    std::vector<BigInt> fc(static_cast<size_t>(std::max(num.degree() + 1, 0)));
    for (int i = 0; i <= num.degree(); ++i)
        fc[i] = exact_quot(num.coeff(i), bp, "the lift difference");
    PolyFp Fbar = PolyFp::from_int(IntPoly(std::move(fc)), p);

    PolyFp common = polyfp::poly_gcd_fp(polyfp::poly_gcd_fp(Fbar, gbar), hbar);
    PrimeIndexVerdict v;
    v.p = p;
    v.rule = IndexRule::dedekind;
    v.divides_index = common.degree() != 0;
    v.detail = v.divides_index ? "gcd(F, g, h) = " + common.to_string() + " mod p"
                               : "gcd(F, g, h) = 1 mod p";
    return v;
}

MonogenicityReport monogenicity_report(const Trinomial& t, bool attest_irreducible) {
    MonogenicityReport rep(t);
    rep.discriminant = polyfp::swan_discriminant(t);

    if (t.N == 2) {
        // Degree 2 is decidable outright: reducible over Q exactly when the
        // discriminant A^2 - 4B is a perfect square (zero included).
        bool square = rep.discriminant >= 0 && mpz_perfect_square_p(rep.discriminant.get_mpz_t());
        rep.irreducible = !square;
        rep.basis = rep.irreducible ? IrreducibilityBasis::quadratic_criterion
                                    : IrreducibilityBasis::refuted;
    } else if (rep.discriminant == 0) {
        rep.irreducible = false;  // a vanishing discriminant means a repeated root
        rep.basis = IrreducibilityBasis::refuted;
    } else {
        std::optional<bool> fam;
        if (t.N == 2 * t.M && t.B == -1 && t.A <= -1 && t.A != -4)
            fam = attached_disc_squarefree(-t.A);
        if (fam.value_or(false)) {
            rep.irreducible = true;
            rep.basis = IrreducibilityBasis::family_lemma;
        } else if (attest_irreducible) {
            rep.irreducible = true;
            rep.basis = IrreducibilityBasis::attested;
        } else {
            throw std::invalid_argument(
                "irreducibility is not established for this trinomial; attest it explicitly");
        }
    }
    if (!rep.irreducible) {
        rep.is_monogenic = false;
        return rep;
    }

    // Primes of the discriminant +-B^(M-1) D^r come from |B| and |D|; the
    // discriminant itself is never factored.
    std::set<uint64_t> primes;
    auto absorb = [&rep, &primes](const BigInt& x) {
        BigInt a = abs(x);
        if (a <= 1) return;
        try {
            for (const auto& [pp, e] : arith::factor(a).factors) primes.insert(pp);
        } catch (const arith::factor_incomplete& fi) {
            for (const auto& [pp, e] : fi.partial.factors) primes.insert(pp);
            rep.complete = false;
            rep.untested_cofactors.push_back(fi.cofactor);
        } catch (const std::domain_error&) {
            // the value exceeds the factorization input cap outright
            rep.complete = false;
            rep.untested_cofactors.push_back(a);
        }
    };
    absorb(t.D);
    if (t.M >= 2) absorb(t.B);

    for (uint64_t p : primes) {
        const BigInt bp = big_of(p);
        long v_disc = static_cast<long>(t.M - 1) * valuation(t.B, bp) +
                      static_cast<long>(t.r) * valuation(t.D, bp);
        if (v_disc < 1) throw std::logic_error("collected a prime that misses the discriminant");
        if (v_disc >= 2) {
            PrimeIndexVerdict v = jks_check(t, p);
            if (t.N <= 64) {
                PrimeIndexVerdict w = dedekind_check(t.poly(), p);
                if (w.divides_index != v.divides_index)
                    throw std::logic_error("index criteria disagree at p = " + std::to_string(p));
            }
            rep.verdicts.push_back(std::move(v));
        } else {
            // The index squared divides the discriminant, so a prime whose
            // square misses the discriminant cannot divide the index.
            rep.verdicts.push_back(
                {p, false, IndexRule::square_free, "p^2 does not divide the discriminant"});
        }
    }

    bool any_divides = std::any_of(rep.verdicts.begin(), rep.verdicts.end(),
                                   [](const PrimeIndexVerdict& w) { return w.divides_index; });
    if (any_divides)
        rep.is_monogenic = false;
    else if (rep.complete)
        rep.is_monogenic = true;
    // otherwise: stays empty — some prime of the discriminant was never examined
    return rep;
}

TheoremReport verify_main_theorem(uint64_t k, uint64_t s, uint32_t depth, int degree_cap) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    if (s == 0) throw std::invalid_argument("s must be >= 1");
    if (depth == 0) throw std::invalid_argument("depth must be >= 1");
    if (degree_cap < 2) throw std::invalid_argument("degree cap must be >= 2");
    const auto cap = static_cast<uint64_t>(degree_cap);
    uint64_t top = 1;
    bool over = s > cap;
    for (uint32_t i = 0; i < depth && !over; ++i) {
        top *= s;  // top <= cap and s <= cap, so this cannot overflow
        if (top > cap) over = true;
    }
    if (over || 2 * top > cap)
        throw std::domain_error("family degree 2*s^depth exceeds cap " + std::to_string(degree_cap));

    TheoremReport rep;
    rep.k = k;
    rep.s = s;
    rep.depth = depth;
    rep.k_mod_4_ok = k % 4 != 0;
    const BigInt D = attached_disc(big_of(k));
    rep.D_squarefree = arith::is_squarefree(D);

    auto sf = arith::factor(s);
    std::vector<uint64_t> odd_primes;
    for (const auto& [p, e] : sf.factors)
        if (p != 2) odd_primes.push_back(p);

    rep.delta_minus1_per_odd_p = std::all_of(odd_primes.begin(), odd_primes.end(), [&](uint64_t p) {
        return arith::legendre(D, p) == -1;
    });
    if (odd_primes.empty()) {
        rep.gcd_p_hD_per_odd_p = true;  // vacuous: no odd prime divides s
    } else if (!rep.D_squarefree) {
        rep.gcd_p_hD_per_odd_p = false;  // class number unavailable, cannot confirm
    } else {
        if (!fits_u64(D) || to_u64(D) > UINT64_MAX / 4)
            throw std::domain_error("class number unavailable: k is too large");
        uint64_t Du = to_u64(D);  // squarefree, so the fundamental discriminant is D or 4D
        uint64_t fund = Du % 4 == 1 ? Du : 4 * Du;
        uint64_t h = quadfield::class_number_real(fund);
        rep.gcd_p_hD_per_odd_p = std::all_of(odd_primes.begin(), odd_primes.end(), [&](uint64_t p) {
            return h % p != 0 && !divides(big_of(p), D);
        });
    }
    rep.hypotheses_ok =
        rep.k_mod_4_ok && rep.D_squarefree && rep.delta_minus1_per_odd_p && rep.gcd_p_hD_per_odd_p;
    if (!rep.hypotheses_ok) return rep;  // consistency stays unevaluated

    for (const auto& [p, e] : sf.factors)
        if (lucas::wss_test(lucas::LucasParams{k}, p).is_wss) rep.wss_divisors.push_back(p);

    uint64_t tn = 1;
    for (uint32_t n = 1; n <= depth; ++n) {
        tn *= s;
        Trinomial tri(static_cast<int>(2 * tn), static_cast<int>(tn), -big_of(k), BigInt(-1),
                      degree_cap);
        auto mono = monogenicity_report(tri);
        if (!mono.is_monogenic.has_value())
            throw std::logic_error("family report unexpectedly incomplete");
        rep.family_results.emplace_back(n, *mono.is_monogenic);
    }
    bool all_mono = std::all_of(rep.family_results.begin(), rep.family_results.end(),
                                [](const auto& nr) { return nr.second; });
    rep.consistent_with_theorem = (rep.wss_divisors.empty() == all_mono);
    return rep;
}

}  // namespace trinogen::monogenic
