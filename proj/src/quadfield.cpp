#include "trinogen/quadfield.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace trinogen::quadfield {

using arith::addmod;
using arith::mulmod;
using arith::submod;

namespace {

constexpr uint64_t kFieldKCap = 0x7FFFFFFFull;       // keeps 4*D inside 64 bits
constexpr uint64_t kClassEnumCap = 100'000'000ull;   // form enumeration is O(d)

struct Form {
    int64_t a, b, c;
    auto operator<=>(const Form&) const = default;
};

int64_t disc_of(const Form& f) { return f.b * f.b - 4 * f.a * f.c; }

// One reduction step on an indefinite reduced form: (a, b, c) -> (c, b', c')
// with b' = -b mod 2|c| placed in the window (sqrt(d) - 2|c|, sqrt(d)).
Form rho(const Form& f, int64_t t, int64_t d) {
    int64_t L = 2 * (f.c < 0 ? -f.c : f.c);
    int64_t bp = t - ((t + f.b) % L + L) % L;
    int64_t num = bp * bp - d;
    if (num % (4 * f.c) != 0) throw std::logic_error("reduction step lost integrality");
    return {f.c, bp, num / (4 * f.c)};
}

}  // namespace

QuadInt::QuadInt(uint64_t a, uint64_t b, uint64_t k, uint64_t m) : k_(k), m_(m) {
    if (m == 0) throw std::invalid_argument("modulus must be >= 1");
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    a_ = a % m;
    b_ = b % m;
}

QuadInt QuadInt::operator*(const QuadInt& rhs) const {
    if (k_ != rhs.k_ || m_ != rhs.m_)
        throw std::invalid_argument("mixed rings: operands have different (k, m)");
    // (a1 + b1 e)(a2 + b2 e) with e^2 = k e + 1
    uint64_t cross = addmod(mulmod(a_, rhs.b_, m_), mulmod(b_, rhs.a_, m_), m_);
    uint64_t a = addmod(mulmod(a_, rhs.a_, m_), mulmod(b_, rhs.b_, m_), m_);
    uint64_t b = addmod(cross, mulmod(k_ % m_, mulmod(b_, rhs.b_, m_), m_), m_);
    return {a, b, k_, m_};
}

QuadInt QuadInt::operator-(const QuadInt& rhs) const {
    if (k_ != rhs.k_ || m_ != rhs.m_)
        throw std::invalid_argument("mixed rings: operands have different (k, m)");
    return {submod(a_, rhs.a_, m_), submod(b_, rhs.b_, m_), k_, m_};
}

QuadInt QuadInt::conjugate() const {
    return {addmod(a_, mulmod(k_ % m_, b_, m_), m_), submod(0, b_, m_), k_, m_};
}

QuadInt QuadInt::norm() const {
    QuadInt n = *this * conjugate();
    if (n.b_ != 0) throw std::logic_error("norm has a nonzero eps coordinate");
    return n;
}

QuadInt QuadInt::pow(uint64_t e) const {
    QuadInt r = one(k_, m_);
    QuadInt base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

FieldData field_data(uint64_t k) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    if (k == 4) throw std::invalid_argument("k = 4 is excluded: the attached unit is not fundamental");
    if (k > kFieldKCap) throw std::domain_error("field data capped at k < 2^31");
    FieldData fd;
    fd.k = k;
    fd.D = lucas::D_of(k);
    auto f = arith::factor(fd.D);
    uint64_t kernel = 1;
    fd.squarefree_D = true;
    for (const auto& [p, e] : f.factors) {
        if (e % 2 == 1) kernel *= p;
        if (e > 1) fd.squarefree_D = false;
    }
    fd.fund_disc = kernel % 4 == 1 ? kernel : 4 * kernel;
    if (fd.squarefree_D) fd.class_number = class_number_real(fd.fund_disc);
    fd.unit_is_fundamental = fd.squarefree_D;
    return fd;
}

uint64_t unit_order(uint64_t k, uint64_t m) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    uint64_t p;
    int level;
    if (m % 2 == 1 && m > 2 && arith::is_prime(m)) {
        p = m;
        level = 1;
    } else {
        uint64_t r = arith::isqrt_u64(m);
        if (r * r == m && r % 2 == 1 && r > 2 && arith::is_prime(r)) {
            p = r;
            level = 2;
        } else {
            throw std::invalid_argument("modulus must be an odd prime or the square of one: " + std::to_string(m));
        }
    }
    if (p > (UINT64_MAX - 2) / 2) throw std::domain_error("prime too large for the order bound");
    if (arith::jacobi(lucas::D_of(k) % p, p) != -1)
        throw std::invalid_argument("unit order requires the discriminant to be a non-residue at p");

    // eps^(p+1) equals the norm -1 mod p, so the order mod p divides 2(p+1).
    uint64_t ord = 0;
    QuadInt one_p = QuadInt::one(k, p);
    for (uint64_t d : arith::divisors_u64(arith::factor(2 * (p + 1)))) {
        if (QuadInt::eps(k, p).pow(d) == one_p) {
            ord = d;
            break;
        }
    }
    if (ord == 0) throw std::logic_error("unit order not found below its divisor bound");
    if (level == 1) return ord;

    uint64_t p2 = p * p;
    QuadInt one_p2 = QuadInt::one(k, p2);
    if (QuadInt::eps(k, p2).pow(ord) == one_p2) return ord;
    if (QuadInt::eps(k, p2).pow(p * ord) == one_p2) return p * ord;
    throw std::logic_error("unit order mod p^2 escaped {ord, p*ord}");
}

bool main1_congruence(uint64_t k, uint64_t p, uint32_t m_exp) {
    if (m_exp == 0) throw std::invalid_argument("exponent level must be >= 1");
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    if (k == 4) throw std::invalid_argument("k = 4 is excluded: the attached unit is not fundamental");
    if (p < 3 || !arith::is_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (p > 0xFFFFFFFFull) throw std::domain_error("p^2 must fit in 64 bits");
    if (k % p == 0) throw std::invalid_argument("p must not divide k");
    uint64_t D = lucas::D_of(k);
    if (arith::jacobi(D % p, p) != -1)
        throw std::invalid_argument("the discriminant must be a non-residue at p");
    if (!arith::is_squarefree(D))
        throw std::invalid_argument("class number unavailable: the discriminant is not squarefree");
    FieldData fd = field_data(k);
    if (*fd.class_number % p == 0) throw std::invalid_argument("p must not divide the class number");

    uint64_t p2 = p * p;
    uint64_t ord = unit_order(k, p2);
    uint64_t e = arith::powmod(p % ord, m_exp, ord);
    QuadInt x = QuadInt::eps(k, p2).pow(e);
    QuadInt kx(mulmod(k % p2, x.a(), p2), mulmod(k % p2, x.b(), p2), k, p2);
    QuadInt r = x * x - kx - QuadInt::one(k, p2);
    return r == QuadInt(0, 0, k, p2);
}

uint64_t class_number_real(uint64_t fund_disc) {
    if (fund_disc > kClassEnumCap)
        throw std::domain_error("class number enumeration capped at discriminant 10^8");
    // Validate fundamentality.
    bool ok = false;
    if (fund_disc >= 5) {
        if (fund_disc % 4 == 1) {
            ok = arith::is_squarefree(fund_disc);
        } else if (fund_disc % 4 == 0) {
            uint64_t n = fund_disc / 4;
            ok = (n % 4 == 2 || n % 4 == 3) && arith::is_squarefree(n);
        }
    }
    if (!ok)
        throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(fund_disc));

    const auto d = static_cast<int64_t>(fund_disc);
    const auto t = static_cast<int64_t>(arith::isqrt_u64(fund_disc));  // floor(sqrt(d)), d non-square

    // Enumerate reduced forms: 0 < b < sqrt(d), sqrt(d) - b < 2|a| < sqrt(d) + b,
    // 4a | b^2 - d.
    std::vector<Form> forms;
    for (int64_t b = 1; b <= t; ++b) {
        if ((b & 1) != (d & 1)) continue;
        int64_t num = (b * b - d) / 4;  // negative
        for (int64_t abs_a = 1;; ++abs_a) {
            int64_t u = 2 * abs_a;
            if (u > b && (u - b) * (u - b) >= d) break;       // upper window edge
            if ((u + b) * (u + b) <= d) continue;             // below lower edge
            if ((-num) % abs_a != 0) continue;
            int64_t c = num / abs_a;
            forms.push_back({abs_a, b, c});
            forms.push_back({-abs_a, b, -c});
        }
    }

    const std::set<Form> universe(forms.begin(), forms.end());
    std::map<Form, int> cycle_of;
    int cycles = 0;
    for (const Form& f : forms) {
        if (cycle_of.count(f)) continue;
        int id = cycles++;
        Form g = f;
        for (;;) {
            if (disc_of(g) != d) throw std::logic_error("form left its discriminant class");
            if (!universe.count(g)) throw std::logic_error("reduction stepped outside the enumerated set");
            auto [it, fresh] = cycle_of.emplace(g, id);
            if (!fresh) {
                if (it->second != id) throw std::logic_error("reduction cycles collided");
                break;
            }
            g = rho(g, t, d);
        }
    }

    // Fold each cycle onto its mate under (a, b, c) -> (-a, b, -c); mating
    // commutes with reduction, so it acts as an involution on whole cycles.
    // The quotient counts classes up to improper equivalence, which is the
    // wide class number.
    std::map<int, int> mate_of;
    for (const Form& f : forms) {
        int c1 = cycle_of.at(f);
        int c2 = cycle_of.at(Form{-f.a, f.b, -f.c});
        auto [it, fresh] = mate_of.emplace(c1, c2);
        if (!fresh && it->second != c2) throw std::logic_error("improper mate is not cycle-consistent");
    }
    uint64_t wide = 0;
    for (const auto& [c, mc] : mate_of)
        if (c <= mc) ++wide;
    return wide;
}

}  // namespace trinogen::quadfield
