#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "eps0/numtheory.hpp"

namespace eps0 {

using Int = mpz_class;
using Rat = mpq_class;

// Input / precondition violations (CLI exit code 2).
class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computed value contradicts a guaranteed identity, e.g. an epsilon factor
// that fails the unit certificate (CLI exit code 3).
class TheoremViolation : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficients of the N-th cyclotomic polynomial, ascending degree, monic.
// Cached; thread-safe.
const std::vector<Int>& cyclotomic_poly(int64_t n);

/// Element of Z[1/p][zeta_N], stored as the canonical representative modulo
/// the N-th cyclotomic polynomial in the power basis 1, z, ..., z^{phi(N)-1}.
/// Coefficient denominators are restricted to powers of the banned prime p.
/// Values are immutable; all operations are pure.
class CycNum {
public:
    CycNum() = delete;

    static CycNum zero(int64_t p) { return from_rat(Rat(0), p); }
    static CycNum one(int64_t p) { return from_rat(Rat(1), p); }
    static CycNum from_rat(const Rat& r, int64_t p);
    // zeta_order^expnt at level `order`
    static CycNum root_of_unity(int64_t order, int64_t expnt, int64_t p);
    // sum_e counts[e] * zeta_N^e; counts has size N
    static CycNum from_histogram(int64_t level, const std::vector<Int>& counts, int64_t p);
    // untrusted coefficients (e.g. parsed input); validates the denominator
    // invariant and reduces
    static CycNum from_coeffs(int64_t level, const std::vector<Rat>& coeffs, int64_t p);

    int64_t level() const { return level_; }
    int64_t banned_prime() const { return p_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    // re-express at a multiple of the current level
    CycNum lifted_to(int64_t new_level) const;

    CycNum operator-() const;
    friend CycNum operator+(const CycNum& a, const CycNum& b);
    friend CycNum operator-(const CycNum& a, const CycNum& b);
    friend CycNum operator*(const CycNum& a, const CycNum& b);
    friend CycNum operator*(const CycNum& a, const Rat& r);
    friend CycNum operator*(const Rat& r, const CycNum& a) { return a * r; }

    bool operator==(const CycNum& o) const;
    bool operator!=(const CycNum& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_rational() const;
    Rat to_rational() const; // throws if not rational

    // Galois action zeta -> zeta^k, gcd(k, level) = 1
    CycNum galois(int64_t k) const;

    // Field norm from Q(zeta_N) to Q at the stored level N, i.e. the product
    // of all phi(N) conjugates, computed as Res(Phi_N, A) for the coefficient
    // polynomial A (Phi_N monic, so no extra normalization factor).
    Rat norm() const;

    // true iff the element is a unit of Z[1/p][zeta_N], decided by |norm|
    // being an exact power of p (p^k with k in Z)
    bool is_unit() const;

    // inverse of a unit; throws TheoremViolation-free Error if not a unit
    CycNum inv() const;

    CycNum pow(int64_t e) const; // negative e inverts first

    std::string str() const; // human-readable, e.g. "1 + 2*z3"

private:
    CycNum(int64_t level, int64_t p, std::vector<Rat> c)
        : level_(level), p_(p), c_(std::move(c))
    {
    }

    static void check_compatible(const CycNum& a, const CycNum& b);

    int64_t level_;
    int64_t p_;
    std::vector<Rat> c_; // size phi(level_)
};

// true iff r = +-p^k for some k in Z (r nonzero)
bool is_signed_p_power(const Rat& r, int64_t p);

} // namespace eps0
