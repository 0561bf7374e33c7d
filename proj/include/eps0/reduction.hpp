#pragma once

#include <memory>
#include <vector>

#include "eps0/chars.hpp"
#include "eps0/cyclotomic.hpp"
#include "eps0/epsilon.hpp"

namespace eps0 {

/// Element of F_{l^d} presented as a polynomial of degree < d modulo a fixed
/// irreducible factor of a cyclotomic polynomial over F_l.
struct FinFieldElem {
    int64_t l = 0;
    int d = 0;
    std::vector<int64_t> rep; // length d, coefficients in [0, l)

    bool operator==(const FinFieldElem&) const = default;
    bool is_zero() const;
    std::string str() const;
};

/// Ring homomorphism Z[1/p][zeta_N] -> F_{l^d} sending zeta_N to a root of
/// the lexicographically smallest irreducible factor of Phi_N over F_l
/// (coefficients compared low-degree-first). Requires l != p.
class ReductionMap {
public:
    static ReductionMap make(int64_t level, int64_t p, int64_t l);

    int64_t level() const { return level_; }
    int64_t p() const { return p_; }
    int64_t l() const { return l_; }
    int d() const { return d_; }
    const std::vector<int64_t>& modulus() const { return modulus_; }

    FinFieldElem reduce(const CycNum& a) const;
    FinFieldElem from_rat(const Rat& r) const;
    FinFieldElem zeta_power(int64_t e) const; // image of zeta_level^e

    FinFieldElem add(const FinFieldElem& a, const FinFieldElem& b) const;
    FinFieldElem mul(const FinFieldElem& a, const FinFieldElem& b) const;
    FinFieldElem pow(const FinFieldElem& a, int64_t e) const;
    FinFieldElem inv(const FinFieldElem& a) const;
    FinFieldElem one() const;
    FinFieldElem zero() const;

private:
    ReductionMap() = default;
    int64_t level_ = 0, p_ = 0, l_ = 0;
    int d_ = 0;
    std::vector<int64_t> modulus_; // ascending, monic, length d+1
};

// Factor a squarefree-by-construction cyclotomic polynomial over F_l into its
// irreducible factors (distinct-degree structure is known: all factors share
// one degree). Randomized splitting runs on a fixed seed, so results are
// deterministic across runs.
std::vector<std::vector<int64_t>> factor_cyclotomic_mod(int64_t level, int64_t l);

/// The rank-1 epsilon factor computed entirely inside F_{l^d}: every
/// character value and the measure are pushed through the reduction first and
/// the Gauss sum is accumulated in the finite field. A zero result throws
/// TheoremViolation.
FinFieldElem epsilon0_mod_l(const MulChar& chi, const AdditiveCharacter& psi,
                            const HaarMeasure& dx, const ReductionMap& r);

// the cyclotomic level sufficient for every root of unity occurring in the
// job (psi values, chi unit values, chi(pi), vol)
int64_t job_level(const MulChar& chi, const AdditiveCharacter& psi,
                  const HaarMeasure& dx);

} // namespace eps0
