#pragma once

#include <vector>

#include "eps0/chars.hpp"
#include "eps0/cyclotomic.hpp"

namespace eps0 {

/// Finite group given by a multiplication table; element 0 is the identity.
/// Construction validates the group axioms and computes conjugacy classes.
struct FiniteGroup {
    int n = 0;
    std::vector<std::vector<int>> mul; // n x n
    std::vector<int> inverse;
    std::vector<int> class_of;              // element -> class index
    std::vector<std::vector<int>> classes;  // ascending representatives

    static FiniteGroup from_table(std::vector<std::vector<int>> table);

    bool is_subgroup(const std::vector<int>& subset) const;  // sorted element list
    bool is_normal(const std::vector<int>& subset) const;
};

/// Ramification filtration in the lower numbering: J_0 >= J_1 >= ... >= J_r
/// with J_0 the full group, each J_i normal in J_0 and J_r trivial.
struct RamFiltration {
    FiniteGroup group;
    std::vector<std::vector<int>> chain; // sorted element lists

    static RamFiltration make(FiniteGroup g, std::vector<std::vector<int>> chain);
};

/// Rational class function, one value per conjugacy class.
struct ClassFunction {
    const FiniteGroup* group;
    std::vector<Rat> values; // indexed by class

    Rat at_element(int g) const { return values[static_cast<size_t>(group->class_of[static_cast<size_t>(g)])]; }
};

// a_J = sum_{i>=0} [J_0:J_i]^{-1} Ind_{J_i}^{J_0} u_i with u_i the
// augmentation character of J_i; integer-valued (asserted).
ClassFunction artin_character(const RamFiltration& f);

// same sum starting at i = 1; vanishes off J_1 (asserted)
ClassFunction swan_character(const RamFiltration& f);

// <f, chi> = |J|^{-1} sum_j f(j) chi(j), computed exactly in the cyclotomic
// ring and returned as a rational (asserted rational). chi is a CycNum-valued
// map on elements and must be a homomorphism (validated).
Rat conductor_pairing(const ClassFunction& f, const std::vector<CycNum>& chi_values);

/// All 1-dimensional characters of an abelian group, built from a computed
/// basis; values are exact roots of unity.
struct AbelianCharacterTable {
    const FiniteGroup* group;
    std::vector<int> basis_gens;
    std::vector<int64_t> basis_orders;
    std::vector<std::vector<int64_t>> dlogs; // element -> exponent vector
    int64_t count() const;

    RootOfUnity value(int64_t char_index, int element) const;
    std::vector<CycNum> values_of(int64_t char_index, int64_t p) const;
    std::vector<int64_t> exponents_of(int64_t char_index) const;
};

AbelianCharacterTable abelian_characters(const FiniteGroup& g);

// Gal(Q_p(zeta_{p^n})/Q_p) = (Z/p^n)^x with its standard lower-numbering
// filtration; elements are the residues coprime to p in ascending order.
// Also records the residue each element index stands for.
struct CyclotomicFiltration {
    RamFiltration filtration;
    std::vector<int64_t> residues; // element index -> residue mod p^n
    int64_t p;
    int n;
};

CyclotomicFiltration builtin_cyclotomic_filtration(int64_t p, int n);

// Quotient of a filtration by a normal subgroup contained in every J_i that
// it meets: the image group with the image chain. Valid for the built-in
// cyclotomic data, where the lower-numbering breaks align with the quotient.
struct QuotientFiltration {
    RamFiltration filtration;
    std::vector<int> projection; // element of the source -> element of the quotient
};

QuotientFiltration quotient_filtration(const RamFiltration& f,
                                       const std::vector<int>& kernel);

} // namespace eps0
