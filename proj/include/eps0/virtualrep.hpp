#pragma once

#include <vector>

#include "eps0/chars.hpp"

namespace eps0 {

/// Monomial atom: the representation induced from a character of the
/// unramified extension of degree fprime (fprime = 1 means a plain character
/// of the base field). Ramified extensions have no model here and cannot be
/// expressed.
struct Atom {
    LocalFieldSpec base;
    int fprime;
    MulChar chi; // character of base.unram_ext(fprime)

    Atom(LocalFieldSpec base_, int fprime_, MulChar chi_);

    int rank() const { return fprime; }
    // unramified induction multiplies the Swan conductor by the residue degree
    int64_t swan() const { return fprime * chi.swan(); }

    bool operator==(const Atom& o) const
    {
        return base == o.base && fprime == o.fprime && chi == o.chi;
    }
};

/// Z-linear combination of atoms over a fixed base field; terms are kept
/// merged with zero coefficients dropped, so equality of the term lists is
/// equality of virtual representations.
class VirtualRep {
public:
    VirtualRep() = default;
    static VirtualRep single(Atom a, int64_t coef = 1);

    VirtualRep& add_term(int64_t coef, Atom a);
    VirtualRep plus(const VirtualRep& o) const;
    VirtualRep scaled(int64_t c) const;

    const std::vector<std::pair<int64_t, Atom>>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    int64_t rank() const;
    int64_t swan() const;

    // det evaluated at a in K^x; defined for base atoms only (fprime = 1)
    CycNum det_at(const KElement& a) const;

    // rank of the invariants under I' (= inertia for l = 0; the minimal
    // subgroup with pro-l quotient for l > 0). For the atoms modeled here the
    // count is the number of unramified constituents either way; l must be 0
    // or a prime different from the residue characteristic.
    int64_t inertia_invariants_rank(int64_t l) const;

    bool operator==(const VirtualRep& o) const { return terms_ == o.terms_; }

private:
    std::vector<std::pair<int64_t, Atom>> terms_;
};

// Ind_{L/K}(chi0 o N_{L/K}) decomposed as the sum of chi0 * eta over the
// fprime unramified characters eta with eta(pi)^{fprime} = 1; valid for
// cyclic unramified L/K.
VirtualRep decompose_galois_invariant_induction(const LocalFieldSpec& base, int fprime,
                                                const MulChar& chi0);

} // namespace eps0
