// The ring Z[eps]/(eps^2 - k*eps - 1) with coefficients mod m, the real
// quadratic field it sits in, and class-number machinery for fundamental
// discriminants.
#pragma once

#include <cstdint>
#include <optional>

#include "trinogen/lucas.hpp"

namespace trinogen::quadfield {

struct FieldData {
    uint64_t k = 0;
    uint64_t D = 0;          // discriminant attached to k (see lucas::D_of)
    uint64_t fund_disc = 0;  // fundamental discriminant of Q(sqrt(D))
    bool squarefree_D = false;
    std::optional<uint64_t> class_number;  // wide class number; absent unless D is squarefree
    bool unit_is_fundamental = false;      // guarantee window for the unit eps
};

/// Field invariants for k >= 1.  k = 4 is rejected: its unit is a proper
/// power, so none of the fundamental-unit guarantees apply.
FieldData field_data(uint64_t k);

/// a + b*eps with both coordinates mod m, where eps^2 = k*eps + 1.
class QuadInt {
public:
    QuadInt(uint64_t a, uint64_t b, uint64_t k, uint64_t m);
    static QuadInt one(uint64_t k, uint64_t m) { return {1, 0, k, m}; }
    static QuadInt eps(uint64_t k, uint64_t m) { return {0, 1, k, m}; }

    uint64_t a() const { return a_; }
    uint64_t b() const { return b_; }
    uint64_t k() const { return k_; }
    uint64_t m() const { return m_; }

    QuadInt operator*(const QuadInt& rhs) const;
    QuadInt operator-(const QuadInt& rhs) const;
    bool operator==(const QuadInt& rhs) const = default;

    /// a + b*k - b*eps: the image of eps under the nontrivial automorphism.
    QuadInt conjugate() const;

    /// x * conj(x); the eps-coordinate always cancels (checked).
    QuadInt norm() const;

    QuadInt pow(uint64_t e) const;

private:
    uint64_t a_, b_, k_, m_;
};

inline QuadInt quad_mul(const QuadInt& x, const QuadInt& y) { return x * y; }
inline QuadInt quad_pow(const QuadInt& x, uint64_t e) { return x.pow(e); }

/// Multiplicative order of eps mod m, for m an odd prime p or p^2 with the
/// attached discriminant a non-residue at p (so the order divides 2(p+1)
/// resp. 2(p+1)p).
uint64_t unit_order(uint64_t k, uint64_t m);

/// Whether eps^(2*p^m_exp) - k*eps^(p^m_exp) - 1 vanishes mod p^2, the
/// congruence that detects square divisibility at p for the whole tower.
/// Hypotheses (each rejected with its own message): p an odd prime not
/// dividing k, discriminant a non-residue at p, k != 4, discriminant
/// squarefree so the class number exists, and p not dividing that class
/// number.
bool main1_congruence(uint64_t k, uint64_t p, uint32_t m_exp);

/// Wide class number of the real quadratic order of fundamental
/// discriminant d, by counting reduction cycles of indefinite binary
/// quadratic forms and folding each cycle onto its improper mate.
uint64_t class_number_real(uint64_t fund_disc);

}  // namespace trinogen::quadfield
