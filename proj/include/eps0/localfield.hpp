#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "eps0/abelian.hpp"
#include "eps0/cyclotomic.hpp"
#include "eps0/numtheory.hpp"

namespace eps0 {

enum class FieldKind { padic, laurent };

/// A nonarchimedean local field at small parameters: either the unramified
/// extension of Q_p of residue degree f (uniformizer p), or F_q((t)) with
/// q = p^f (uniformizer t).
struct LocalFieldSpec {
    FieldKind kind;
    int64_t p;
    int f;

    int64_t q() const { return ipow(p, f); }
    LocalFieldSpec unram_ext(int fprime) const;
    bool operator==(const LocalFieldSpec&) const = default;

    std::string str() const;
    static LocalFieldSpec parse(const std::string& descriptor);
};

/// F_{p^f} with elements packed as base-p integer codes (code of
/// sum c_i y^i is sum c_i p^i). The modulus is the first monic primitive
/// polynomial of degree f in code order -- a fixed, reproducible convention.
class SmallField {
public:
    static const SmallField& get(int64_t p, int f);

    int64_t p;
    int f;
    int64_t size; // p^f
    std::vector<int64_t> modulus; // ascending coeffs, length f+1, monic

    int64_t add(int64_t a, int64_t b) const;
    int64_t sub(int64_t a, int64_t b) const;
    int64_t neg(int64_t a) const;
    int64_t mul(int64_t a, int64_t b) const;
    int64_t inv(int64_t a) const;
    int64_t pow(int64_t a, int64_t e) const;
    int64_t frob(int64_t a, int iters) const; // a^{p^iters}
    int64_t trace_to_prime(int64_t a) const;  // value in [0, p)

private:
    SmallField(int64_t p_, int f_);
    std::vector<int64_t> decode(int64_t code) const;
    int64_t encode(const std::vector<int64_t>& v) const;
};

// canonical embedding F_{p^a} -> F_{p^b} for a | b: the subfield generator is
// sent to the smallest-code root of its minimal polynomial
class SubfieldMap {
public:
    static const SubfieldMap& get(const SmallField& sub, const SmallField& big);
    const SmallField* sub;
    const SmallField* big;
    int64_t fwd(int64_t code) const { return fwd_[static_cast<size_t>(code)]; }
    int64_t back(int64_t code) const; // throws if not in the image

private:
    SubfieldMap() = default;
    std::vector<int64_t> fwd_;
    std::unordered_map<int64_t, int64_t> back_;
};

class QuotRing;

/// Element of a QuotRing. padic: length-f coefficient vector over Z/p^m in
/// the power basis of the Galois ring generator. laurent: length-m vector of
/// F_q codes (coefficient of t^i at index i).
struct RElem {
    const QuotRing* ring = nullptr;
    std::vector<int64_t> c;

    bool operator==(const RElem& o) const { return ring == o.ring && c == o.c; }
    bool operator!=(const RElem& o) const { return !(*this == o); }
};

/// The finite quotient O_K / pi^m. Instances are interned and immutable;
/// get() always returns the same object for the same parameters.
class QuotRing {
public:
    static const QuotRing& get(const LocalFieldSpec& spec, int m);

    LocalFieldSpec spec;
    int m;
    int64_t pm = 0;                 // p^m (padic)
    std::vector<int64_t> modulus;   // padic, f > 1: literal lift of the residue modulus
    const SmallField* coeff_field = nullptr; // laurent: F_q
    const SmallField* residue_field = nullptr; // F_q in both cases

    int64_t card() const;       // q^m
    int64_t unit_count() const; // q^m - q^{m-1}

    RElem zero() const;
    RElem one() const;
    RElem from_int(int64_t n) const; // image of the rational integer n
    RElem make(std::vector<int64_t> coeffs) const;

    RElem add(const RElem& a, const RElem& b) const;
    RElem sub(const RElem& a, const RElem& b) const;
    RElem neg(const RElem& a) const;
    RElem mul(const RElem& a, const RElem& b) const;
    RElem inv(const RElem& a) const; // a must be a unit
    RElem pow(const RElem& a, int64_t e) const;

    bool is_zero(const RElem& a) const;
    bool is_unit(const RElem& a) const;
    int val(const RElem& a) const; // pi-adic valuation in [0, m]; m for zero

    int64_t residue_code(const RElem& a) const; // image in F_q

    RElem reduce_to(const RElem& a, int m2) const; // m2 <= m
    RElem lift_to(const RElem& a, int m2) const;   // literal lift, m2 >= m
    RElem shift_down(const RElem& a, int k) const; // exact division by pi^k

    RElem frob(const RElem& a, int iters = 1) const; // absolute p-power Frobenius

    uint64_t encode(const RElem& a) const;
    RElem decode(uint64_t code) const;

    void for_each_element(const std::function<void(const RElem&)>& fn) const;
    void for_each_unit(const std::function<void(const RElem&)>& fn) const;

private:
    QuotRing() = default;
    std::vector<int64_t> frob_gen; // padic f > 1: Frobenius image of the generator
    friend class UnramEmbedding;
};

/// Canonical unramified embedding of QuotRing(K, m) into QuotRing(L, m) for
/// L = K.unram_ext(fprime), with the relative Frobenius, trace and norm down
/// to the base.
class UnramEmbedding {
public:
    static const UnramEmbedding& get(const LocalFieldSpec& base, int fprime, int m);

    const QuotRing* base_ring;
    const QuotRing* ext_ring;
    int fprime;

    RElem embed(const RElem& x) const;
    RElem project(const RElem& y) const; // y must lie in the embedded base
    RElem rel_frob(const RElem& y, int times = 1) const; // lifts x -> x^{q_base}
    RElem trace_to_base(const RElem& y) const;
    RElem norm_to_base(const RElem& y) const;

private:
    UnramEmbedding() = default;
    // padic: plain coordinates of the embedded base generator's powers and
    // the recorded elimination steps used to invert the embedding
    std::vector<RElem> gen_powers;
    struct PivotStep {
        int col;
        int row;
        int64_t inv_pivot;
    };
    std::vector<PivotStep> pivots;
    std::vector<std::vector<int64_t>> elim; // matrix after forward elimination
};

// Trace of x in QuotRing(L, m) down to QuotRing(K, m) where L = K.unram_ext(f');
// sums the f' relative-Frobenius conjugates.
RElem trace_to_base(const RElem& x, const LocalFieldSpec& base);
RElem norm_to_base(const RElem& x, const LocalFieldSpec& base);

/// x = pi^v * u with u a unit of QuotRing(field, m); x is known modulo
/// pi^{v+m}.
struct KElement {
    LocalFieldSpec field;
    int64_t v = 0;
    RElem u;

    int prec() const { return u.ring->m; }

    static KElement make(const LocalFieldSpec& field, int64_t v, RElem unit);
    static KElement pi_pow(const LocalFieldSpec& field, int64_t v, int m);
    static KElement from_int_unit(const LocalFieldSpec& field, int64_t v, int64_t unit,
                                  int m);

    KElement mul(const KElement& o) const;
    KElement inv() const;
    KElement pow(int64_t e) const;
};

/// Presentation of (O_K/pi^m)^x: independent generators with orders
/// (invariant factors, largest first) and a discrete-log table over the full
/// unit list. Construction verifies that the generator box enumerates every
/// unit exactly once. Cached per ring; immutable afterwards.
class UnitGroup {
public:
    static const UnitGroup& get(const QuotRing& ring);

    const QuotRing* ring;
    std::vector<RElem> gens;
    std::vector<int64_t> orders;
    std::vector<RElem> units; // ring enumeration order

    // exponent vector of a unit (same ring & precision); throws on non-units
    std::vector<int64_t> dlog(const RElem& u) const;

    int64_t order() const { return static_cast<int64_t>(units.size()); }

private:
    UnitGroup() = default;
    std::unordered_map<uint64_t, uint64_t> dlog_packed_; // encode(u) -> mixed-radix
};

} // namespace eps0
