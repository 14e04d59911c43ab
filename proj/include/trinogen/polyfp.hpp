// Exact integer polynomials, trinomials carrying closed-form discriminant
// data, and polynomial arithmetic plus factorization over prime fields.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "trinogen/bigint.hpp"

namespace trinogen::polyfp {

inline constexpr int kDefaultDegreeCap = 4096;

/// Dense integer polynomial, constant term first.  The zero polynomial has
/// degree -1 and an empty coefficient vector.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);
    static IntPoly monomial(int deg, const BigInt& c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    /// Coefficient of x^i; zero beyond the degree.
    const BigInt& coeff(size_t i) const;
    const BigInt& leading() const;
    bool is_monic() const { return !is_zero() && leading() == 1; }

    IntPoly operator+(const IntPoly&) const;
    IntPoly operator-(const IntPoly&) const;
    IntPoly operator*(const IntPoly&) const;
    bool operator==(const IntPoly&) const = default;

    IntPoly derivative() const;
    BigInt evaluate(const BigInt& x) const;
    std::string to_string() const;

private:
    std::vector<BigInt> c_;
    void normalize();
};

/// x^N + A x^M + B together with the derived quantities used by the
/// closed-form discriminant: r = gcd(N, M), N1 = N/r, M1 = M/r and
///   D = N^N1 B^(N1-M1) - (-1)^N1 M^M1 (N-M)^(N1-M1) A^N1.
struct Trinomial {
    int N = 0;
    int M = 0;
    BigInt A;
    BigInt B;
    int r = 0;
    int N1 = 0;
    int M1 = 0;
    BigInt D;

    Trinomial(int n, int m, BigInt a, BigInt b, int degree_cap = kDefaultDegreeCap);
    IntPoly poly() const;
};

/// Discriminant of the trinomial in closed form:
/// (-1)^(N(N-1)/2) * B^(M-1) * D^r.
BigInt swan_discriminant(const Trinomial& t);

/// Discriminant of any integer polynomial of degree 2..64 through the
/// resultant of f and f': (-1)^(n(n-1)/2) * Res(f, f') / lc(f), with the
/// resultant taken as a fraction-free Sylvester determinant.
BigInt discriminant_resultant(const IntPoly& f);

/// Dense polynomial over F_p (p prime), coefficients reduced, constant
/// term first.
class PolyFp {
public:
    explicit PolyFp(uint64_t p);
    PolyFp(uint64_t p, std::vector<uint64_t> coeffs);
    static PolyFp from_int(const IntPoly& f, uint64_t p);
    static PolyFp monomial(uint64_t p, int deg, uint64_t c = 1);

    uint64_t p() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint64_t leading() const;
    bool is_monic() const { return !is_zero() && leading() == 1; }

    PolyFp operator+(const PolyFp&) const;
    PolyFp operator-(const PolyFp&) const;
    PolyFp operator*(const PolyFp&) const;
    /// (quotient, remainder); the divisor's leading coefficient is inverted
    /// mod p, so p must really be prime.
    std::pair<PolyFp, PolyFp> divmod(const PolyFp& divisor) const;
    PolyFp operator%(const PolyFp& d) const { return divmod(d).second; }
    PolyFp operator/(const PolyFp& d) const { return divmod(d).first; }
    bool operator==(const PolyFp&) const = default;

    PolyFp make_monic() const;
    PolyFp derivative() const;
    uint64_t evaluate(uint64_t x) const;
    std::string to_string() const;

private:
    uint64_t p_;
    std::vector<uint64_t> c_;
    void normalize();
};

/// Monic gcd by the Euclidean chain; gcd(0, 0) = 0.
PolyFp poly_gcd_fp(PolyFp a, PolyFp b);

/// base^e mod `mod`, exponent arbitrary precision (e >= 0).
PolyFp poly_powmod(const PolyFp& base, const BigInt& e, const PolyFp& mod);

/// The integer polynomial with the same coefficients, each in [0, p).
IntPoly lift(const PolyFp& f);

/// Seed for the randomized equal-degree splitting step; fixed so repeated
/// runs factor identically.
inline constexpr uint64_t kFactorSeed = 0x5eedc0de5eedc0deull;

/// Complete factorization of a monic f over F_p into monic irreducibles
/// with multiplicities, sorted by degree then coefficients.  The product is
/// re-multiplied and checked against the input before returning.
std::vector<std::pair<PolyFp, int>> factor_mod_p(const PolyFp& f, uint64_t seed = kFactorSeed);

}  // namespace trinogen::polyfp
