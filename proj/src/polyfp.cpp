#include "trinogen/polyfp.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "trinogen/arith.hpp"

namespace trinogen::polyfp {

using arith::addmod;
using arith::mulmod;
using arith::powmod;
using arith::submod;

void IntPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPoly IntPoly::monomial(int deg, const BigInt& c) {
    if (deg < 0) throw std::invalid_argument("monomial degree must be >= 0");
    std::vector<BigInt> v(deg + 1, BigInt(0));
    v[deg] = c;
    return IntPoly(std::move(v));
}

const BigInt& IntPoly::coeff(size_t i) const {
    static const BigInt zero(0);
    return i < c_.size() ? c_[i] : zero;
}

const BigInt& IntPoly::leading() const {
    if (is_zero()) throw std::logic_error("zero polynomial has no leading coefficient");
    return c_.back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<BigInt> v(std::max(c_.size(), o.c_.size()), BigInt(0));
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<BigInt> v(std::max(c_.size(), o.c_.size()), BigInt(0));
    for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> v(c_.size() + o.c_.size() - 1, BigInt(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(v));
}

BigInt IntPoly::evaluate(const BigInt& x) const {
    BigInt r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

namespace {

std::string term_text(const std::string& mag, bool negative, size_t i, bool first) {
    std::string s;
    if (first) {
        if (negative) s += "-";
    } else {
        s += negative ? " - " : " + ";
    }
    if (i == 0) {
        s += mag;
    } else {
        if (mag != "1") s += mag + "*";
        s += "x";
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
}

}  // namespace

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        BigInt mag = abs(c_[i]);
        out += term_text(mag.get_str(), c_[i] < 0, i, first);
        first = false;
    }
    return out;
}

Trinomial::Trinomial(int n, int m, BigInt a, BigInt b, int degree_cap)
    : N(n), M(m), A(std::move(a)), B(std::move(b)) {
    if (degree_cap < 2) throw std::invalid_argument("degree cap must be >= 2");
    if (N < 2 || M < 1 || M >= N)
        throw std::invalid_argument("trinomial requires 0 < M < N and N >= 2");
    if (N > degree_cap)
        throw std::domain_error("degree " + std::to_string(N) + " exceeds cap " + std::to_string(degree_cap));
    if (A == 0 || B == 0) throw std::invalid_argument("trinomial coefficients must be nonzero");
    r = std::gcd(N, M);
    N1 = N / r;
    M1 = M / r;
    BigInt first = big_pow(BigInt(N), N1) * big_pow(B, N1 - M1);
    BigInt second = big_pow(BigInt(M), M1) * big_pow(BigInt(N - M), N1 - M1) * big_pow(A, N1);
    if (N1 % 2 == 0)
        D = first - second;
    else
        D = first + second;
}

IntPoly Trinomial::poly() const {
    std::vector<BigInt> v(N + 1, BigInt(0));
    v[0] = B;
    v[M] = A;
    v[N] = 1;
    return IntPoly(std::move(v));
}

BigInt swan_discriminant(const Trinomial& t) {
    BigInt disc = big_pow(t.B, t.M - 1) * big_pow(t.D, t.r);
    return (static_cast<int64_t>(t.N) * (t.N - 1) / 2) % 2 == 0 ? disc : -disc;
}

namespace {

// Fraction-free Gaussian elimination; every division is exact, so the
// determinant comes out over the integers with no rational arithmetic.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const size_t s = m.size();
    int sign = 1;
    BigInt prev = 1;
    for (size_t k = 0; k + 1 < s; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < s && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == s) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < s; ++i) {
            for (size_t j = k + 1; j < s; ++j) {
                BigInt num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                if (!mpz_divisible_p(num.get_mpz_t(), prev.get_mpz_t()))
                    throw std::logic_error("fraction-free elimination lost exactness");
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    BigInt det = m[s - 1][s - 1];
    return sign == 1 ? det : -det;
}

}  // namespace

BigInt discriminant_resultant(const IntPoly& f) {
    int n = f.degree();
    if (n < 2 || n > 64)
        throw std::invalid_argument("resultant route accepts degrees 2 through 64; got degree " +
                                    std::to_string(n));
    IntPoly df = f.derivative();
    int m = df.degree();  // n - 1 over Z since n >= 2 and char 0
    const size_t s = n + m;
    std::vector<std::vector<BigInt>> mat(s, std::vector<BigInt>(s, BigInt(0)));
    for (int row = 0; row < m; ++row)
        for (int j = 0; j <= n; ++j) mat[row][row + j] = f.coeff(n - j);
    for (int row = 0; row < n; ++row)
        for (int j = 0; j <= m; ++j) mat[m + row][row + j] = df.coeff(m - j);
    BigInt res = bareiss_determinant(std::move(mat));
    BigInt disc;
    if (!mpz_divisible_p(res.get_mpz_t(), f.leading().get_mpz_t()))
        throw std::logic_error("resultant not divisible by the leading coefficient");
    mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), f.leading().get_mpz_t());
    return (static_cast<int64_t>(n) * (n - 1) / 2) % 2 == 0 ? disc : -disc;
}

void PolyFp::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyFp::PolyFp(uint64_t p) : p_(p) {
    if (p < 2) throw std::invalid_argument("field characteristic must be >= 2");
}

PolyFp::PolyFp(uint64_t p, std::vector<uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    if (p < 2) throw std::invalid_argument("field characteristic must be >= 2");
    for (auto& x : c_) x %= p_;
    normalize();
}

PolyFp PolyFp::from_int(const IntPoly& f, uint64_t p) {
    if (p < 2) throw std::invalid_argument("field characteristic must be >= 2");
    std::vector<uint64_t> v(f.degree() + 1);
    BigInt bp(static_cast<unsigned long>(p));
    for (int i = 0; i <= f.degree(); ++i) {
        BigInt r = f.coeff(i) % bp;
        if (r < 0) r += bp;
        v[i] = to_u64(r);
    }
    return {p, std::move(v)};
}

PolyFp PolyFp::monomial(uint64_t p, int deg, uint64_t c) {
    if (deg < 0) throw std::invalid_argument("monomial degree must be >= 0");
    std::vector<uint64_t> v(deg + 1, 0);
    v[deg] = c;
    return {p, std::move(v)};
}

uint64_t PolyFp::leading() const {
    if (is_zero()) throw std::logic_error("zero polynomial has no leading coefficient");
    return c_.back();
}

PolyFp PolyFp::operator+(const PolyFp& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed characteristics");
    std::vector<uint64_t> v(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < v.size(); ++i) v[i] = addmod(coeff(i), o.coeff(i), p_);
    return {p_, std::move(v)};
}

PolyFp PolyFp::operator-(const PolyFp& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed characteristics");
    std::vector<uint64_t> v(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < v.size(); ++i) v[i] = submod(coeff(i), o.coeff(i), p_);
    return {p_, std::move(v)};
}

PolyFp PolyFp::operator*(const PolyFp& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed characteristics");
    if (is_zero() || o.is_zero()) return PolyFp(p_);
    std::vector<uint64_t> v(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            v[i + j] = addmod(v[i + j], mulmod(c_[i], o.c_[j], p_), p_);
    }
    return {p_, std::move(v)};
}

std::pair<PolyFp, PolyFp> PolyFp::divmod(const PolyFp& divisor) const {
    if (p_ != divisor.p_) throw std::invalid_argument("mixed characteristics");
    if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
    if (degree() < divisor.degree()) return {PolyFp(p_), *this};
    uint64_t inv_lead = powmod(divisor.leading(), p_ - 2, p_);
    if (mulmod(inv_lead, divisor.leading(), p_) != 1)
        throw std::invalid_argument("leading coefficient is not invertible; characteristic must be prime");
    std::vector<uint64_t> rem = c_;
    std::vector<uint64_t> quot(degree() - divisor.degree() + 1, 0);
    for (int i = degree(); i >= divisor.degree(); --i) {
        uint64_t top = rem[i];
        if (top == 0) continue;
        uint64_t q = mulmod(top, inv_lead, p_);
        quot[i - divisor.degree()] = q;
        for (int j = 0; j <= divisor.degree(); ++j) {
            size_t idx = i - divisor.degree() + j;
            rem[idx] = submod(rem[idx], mulmod(q, divisor.coeff(j), p_), p_);
        }
    }
    return {PolyFp(p_, std::move(quot)), PolyFp(p_, std::move(rem))};
}

PolyFp PolyFp::make_monic() const {
    if (is_zero() || leading() == 1) return *this;
    uint64_t inv = powmod(leading(), p_ - 2, p_);
    std::vector<uint64_t> v = c_;
    for (auto& x : v) x = mulmod(x, inv, p_);
    return {p_, std::move(v)};
}

PolyFp PolyFp::derivative() const {
    if (c_.size() <= 1) return PolyFp(p_);
    std::vector<uint64_t> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = mulmod(c_[i], i % p_, p_);
    return {p_, std::move(v)};
}

uint64_t PolyFp::evaluate(uint64_t x) const {
    uint64_t r = 0;
    x %= p_;
    for (size_t i = c_.size(); i-- > 0;) r = addmod(mulmod(r, x, p_), c_[i], p_);
    return r;
}

std::string PolyFp::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        out += term_text(std::to_string(c_[i]), false, i, first);
        first = false;
    }
    return out;
}

PolyFp poly_gcd_fp(PolyFp a, PolyFp b) {
    if (a.p() != b.p()) throw std::invalid_argument("mixed characteristics");
    while (!b.is_zero()) {
        PolyFp r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.make_monic();
}

PolyFp poly_powmod(const PolyFp& base, const BigInt& e, const PolyFp& mod) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    PolyFp result = PolyFp::monomial(base.p(), 0, 1) % mod;
    PolyFp b = base % mod;
    const size_t bits = bit_length(e);
    for (size_t i = bits; i-- > 0;) {
        result = (result * result) % mod;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % mod;
    }
    return result;
}

IntPoly lift(const PolyFp& f) {
    std::vector<BigInt> v(f.degree() + 1);
    for (int i = 0; i <= f.degree(); ++i) v[i] = BigInt(static_cast<unsigned long>(f.coeff(i)));
    return IntPoly(std::move(v));
}

namespace {

// p-th root of g when g'(x) = 0, i.e. g is a polynomial in x^p.  Over the
// prime field the coefficients are their own p-th roots.
PolyFp pth_root(const PolyFp& g) {
    uint64_t p = g.p();
    std::vector<uint64_t> v(g.degree() / p + 1, 0);
    for (int i = 0; i <= g.degree(); ++i) {
        if (g.coeff(i) == 0) continue;
        if (i % p != 0) throw std::logic_error("p-th root of a polynomial with live mixed terms");
        v[i / p] = g.coeff(i);
    }
    return {p, std::move(v)};
}

// Squarefree decomposition in characteristic p: returns coprime monic
// squarefree parts with their multiplicities.
void squarefree_decompose(const PolyFp& f, int scale,
                          std::vector<std::pair<PolyFp, int>>& out) {
    PolyFp d = f.derivative();
    if (d.is_zero()) {
        squarefree_decompose(pth_root(f), scale * static_cast<int>(f.p()), out);
        return;
    }
    PolyFp t = poly_gcd_fp(f, d);
    PolyFp v = f / t;
    int i = 1;
    while (v.degree() > 0) {
        PolyFp w = poly_gcd_fp(t, v);
        PolyFp g = v / w;
        if (g.degree() > 0) out.emplace_back(g, i * scale);
        v = std::move(w);
        t = t / v;
        ++i;
    }
    if (t.degree() > 0) squarefree_decompose(pth_root(t), scale * static_cast<int>(f.p()), out);
}

// Distinct-degree split of a squarefree monic polynomial: pairs of
// (product of irreducible factors, their common degree).
std::vector<std::pair<PolyFp, int>> distinct_degree(PolyFp f) {
    std::vector<std::pair<PolyFp, int>> out;
    uint64_t p = f.p();
    PolyFp h = PolyFp::monomial(p, 1) % f;  // x^(p^d) mod f as d grows
    BigInt bp(static_cast<unsigned long>(p));
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        h = poly_powmod(h, bp, f);
        PolyFp g = poly_gcd_fp(h - PolyFp::monomial(p, 1), f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

// Equal-degree splitting (Cantor-Zassenhaus; trace construction for p = 2).
void equal_degree_split(const PolyFp& g, int d, std::mt19937_64& rng,
                        std::vector<PolyFp>& out) {
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    uint64_t p = g.p();
    PolyFp splitter(p);
    for (;;) {
        std::vector<uint64_t> rc(g.degree());
        for (auto& x : rc) x = rng() % p;
        PolyFp a(p, std::move(rc));
        if (a.is_zero()) continue;
        PolyFp c(p);
        if (p == 2) {
            PolyFp tr = a;
            PolyFp sq = a;
            for (int i = 1; i < d; ++i) {
                sq = (sq * sq) % g;
                tr = tr + sq;
            }
            c = poly_gcd_fp(tr, g);
        } else {
            BigInt e = (big_pow(BigInt(static_cast<unsigned long>(p)), d) - 1) / 2;
            PolyFp b = poly_powmod(a, e, g);
            c = poly_gcd_fp(b - PolyFp::monomial(p, 0, 1), g);
        }
        if (c.degree() > 0 && c.degree() < g.degree()) {
            splitter = c;
            break;
        }
    }
    equal_degree_split(splitter, d, rng, out);
    equal_degree_split(g / splitter, d, rng, out);
}

}  // namespace

std::vector<std::pair<PolyFp, int>> factor_mod_p(const PolyFp& f, uint64_t seed) {
    if (!arith::is_prime(f.p()))
        throw std::invalid_argument("factorization requires a prime characteristic");
    if (!f.is_monic()) throw std::invalid_argument("factorization requires a monic input");
    std::vector<std::pair<PolyFp, int>> result;
    if (f.degree() == 0) return result;

    std::mt19937_64 rng(seed);
    std::vector<std::pair<PolyFp, int>> squarefree;
    squarefree_decompose(f, 1, squarefree);
    for (const auto& [part, mult] : squarefree) {
        for (const auto& [prod, d] : distinct_degree(part)) {
            std::vector<PolyFp> irr;
            equal_degree_split(prod, d, rng, irr);
            for (auto& q : irr) result.emplace_back(std::move(q), mult);
        }
    }

    std::sort(result.begin(), result.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        for (int i = x.first.degree(); i >= 0; --i)
            if (x.first.coeff(i) != y.first.coeff(i)) return x.first.coeff(i) < y.first.coeff(i);
        return x.second < y.second;
    });
    for (size_t i = 0; i + 1 < result.size(); ++i)
        if (result[i].first == result[i + 1].first)
            throw std::logic_error("duplicate irreducible factor across multiplicities");

    PolyFp check = PolyFp::monomial(f.p(), 0, 1);
    for (const auto& [q, e] : result)
        for (int i = 0; i < e; ++i) check = check * q;
    if (!(check == f)) throw std::logic_error("factor product does not reproduce the input");
    return result;
}

}  // namespace trinogen::polyfp
