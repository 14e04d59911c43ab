// Index-divisibility criteria for trinomials, irreducibility for the
// x^(2t) - k x^t - 1 family, and the top-level equivalence verifier tying
// monogenicity of that family to Wall-Sun-Sun divisors.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trinogen/bigint.hpp"
#include "trinogen/polyfp.hpp"

namespace trinogen::monogenic {

/// Which statement settled a per-prime index question.  jks1..jks5 are the
/// five coefficient-pattern cases of the trinomial index criterion;
/// `dedekind` is the factor-and-lift criterion; `square_free` marks primes
/// whose square does not divide the discriminant (the index squared divides
/// the discriminant, so such primes can never divide the index).
enum class IndexRule { jks1, jks2, jks3, jks4, jks5, dedekind, square_free };

const char* rule_name(IndexRule r);

struct PrimeIndexVerdict {
    uint64_t p = 0;
    bool divides_index = false;
    IndexRule rule = IndexRule::dedekind;
    std::string detail;  // human-readable witness for the verdict
};

/// How a report's irreducibility entry was established.
enum class IrreducibilityBasis {
    quadratic_criterion,  // degree 2: discriminant is not a perfect square
    family_lemma,         // x^(2t) - k x^t - 1 with squarefree attached discriminant
    attested,             // the caller vouched for it
    refuted,              // shown reducible (zero or square discriminant)
};

const char* basis_name(IrreducibilityBasis b);

struct MonogenicityReport {
    explicit MonogenicityReport(polyfp::Trinomial t) : trinomial(std::move(t)) {}

    polyfp::Trinomial trinomial;
    BigInt discriminant;
    bool irreducible = false;
    IrreducibilityBasis basis = IrreducibilityBasis::refuted;
    /// One verdict per distinct known prime of the discriminant, ascending.
    std::vector<PrimeIndexVerdict> verdicts;
    /// False when some discriminant cofactor resisted factoring; its primes
    /// were then never examined.
    bool complete = true;
    std::vector<BigInt> untested_cofactors;
    /// True/false only when decidable: false as soon as one prime divides
    /// the index (or the polynomial is reducible); true only when the report
    /// is complete, the polynomial irreducible, and no prime divides; empty
    /// when the factorization was incomplete and nothing ruled it out.
    std::optional<bool> is_monogenic;
};

/// Irreducibility of x^(2s^n) - k x^(s^n) - 1 over Q via the unit argument:
/// true when the discriminant attached to k is squarefree; empty ("unknown")
/// when it is not, since the argument is then inapplicable.  k = 4 is
/// rejected: its unit is a proper power and the argument never applies.
std::optional<bool> family_irreducible(uint64_t k, uint64_t s, uint32_t n);

/// The five-case trinomial index criterion at a prime p dividing the
/// discriminant of t (rejected otherwise).  The caller must know t to be
/// irreducible over Q.  Exactly one case applies, selected by the
/// divisibility pattern of (A, B, M) at p.
PrimeIndexVerdict jks_check(const polyfp::Trinomial& t, uint64_t p);

/// The factor-and-lift index criterion: factor f mod p, g = product of the
/// distinct irreducible factors lifted to Z, h = lift of f/g mod p,
/// F = (g h - f)/p; then p divides the index iff gcd(F, g, h) mod p is not
/// constant.  f must be monic and irreducible over Q.
PrimeIndexVerdict dedekind_check(const polyfp::IntPoly& f, uint64_t p);

/// Full per-prime index examination of one trinomial.  Irreducibility is
/// established by the degree-2 criterion, the family lemma, or the caller's
/// explicit attestation — otherwise the call is rejected.  Primes come from
/// factoring |B| and |D| rather than the discriminant itself; primes whose
/// square does not divide the discriminant are marked by the square_free
/// shortcut, all others go through the five-case criterion with the
/// factor-and-lift criterion cross-checking every verdict while the degree
/// is at most 64 (disagreement aborts loudly).
MonogenicityReport monogenicity_report(const polyfp::Trinomial& t,
                                       bool attest_irreducible = false);

struct TheoremReport {
    uint64_t k = 0;
    uint64_t s = 0;
    uint32_t depth = 0;
    // Hypothesis checks, each a conjunction over the odd primes p | s where
    // a prime is involved; vacuously true when s has no odd prime divisor.
    bool k_mod_4_ok = false;
    bool D_squarefree = false;
    bool delta_minus1_per_odd_p = false;
    bool gcd_p_hD_per_odd_p = false;
    bool hypotheses_ok = false;
    /// Primes p | s whose square divides the Lucas term at its entry index.
    std::vector<uint64_t> wss_divisors;
    /// (n, is_monogenic) for x^(2s^n) - k x^(s^n) - 1, n = 1..depth.
    std::vector<std::pair<uint32_t, bool>> family_results;
    /// wss_divisors empty <=> all family members monogenic; evaluated only
    /// when every hypothesis check passed.
    std::optional<bool> consistent_with_theorem;
};

/// Check the main equivalence on one (k, s) cell: verify the hypotheses,
/// list the Wall-Sun-Sun prime divisors of s, decide monogenicity of the
/// family members for n = 1..depth, and compare the two sides.  Hypothesis
/// failures short-circuit with the consistency left unevaluated.
TheoremReport verify_main_theorem(uint64_t k, uint64_t s, uint32_t depth,
                                  int degree_cap = polyfp::kDefaultDegreeCap);

}  // namespace trinogen::monogenic
