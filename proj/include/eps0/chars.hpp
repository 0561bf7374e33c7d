#pragma once

#include <optional>
#include <vector>

#include "eps0/cyclotomic.hpp"
#include "eps0/localfield.hpp"

namespace eps0 {

/// zeta_order^exp in canonical form: gcd(exp, order) = 1 or exp = 0 with
/// order = 1.
struct RootOfUnity {
    int64_t order = 1;
    int64_t exp = 0;

    static RootOfUnity make(int64_t order, int64_t exp);
    static RootOfUnity one() { return RootOfUnity{1, 0}; }

    RootOfUnity mul(const RootOfUnity& o) const;
    RootOfUnity pow(int64_t e) const { return make(order, exp * (e % order)); }
    RootOfUnity inv() const { return make(order, -exp); }
    bool is_one() const { return order == 1; }
    bool operator==(const RootOfUnity&) const = default;

    CycNum to_cyc(int64_t p) const { return CycNum::root_of_unity(order, exp, p); }
};

/// Additive character of a local field; evaluation yields roots of unity of
/// p-power order.
class AdditiveCharacter {
public:
    virtual ~AdditiveCharacter() = default;
    virtual LocalFieldSpec field() const = 0;
    // the level n(psi): psi is trivial on pi^{-n} O_K and nontrivial one step
    // further out
    virtual int64_t level() const = 0;
    virtual RootOfUnity eval_rou(const KElement& x) const = 0;

    CycNum eval(const KElement& x) const { return eval_rou(x).to_cyc(field().p); }
};

/// a * psi_0 for the standard character psi_0 of level 0. The standard
/// choice is a convention (the theory fixes none): for p-adic fields
/// psi_0(x) = zeta_{p^k}^c encodes exp(2*pi*i*{Tr x}) through the p-adic
/// fractional part; for F_q((t)), psi_0(sum a_i t^i) = zeta_p^{tr(a_{-1})}.
class AddChar final : public AdditiveCharacter {
public:
    static AddChar standard(const LocalFieldSpec& field);

    AddChar twisted_by(const KElement& a) const;
    AddChar negated() const; // twist by -1 in K^x

    LocalFieldSpec field() const override { return field_; }
    int64_t level() const override { return twist_ ? twist_->v : 0; }
    RootOfUnity eval_rou(const KElement& x) const override;
    const std::optional<KElement>& twist() const { return twist_; }

private:
    explicit AddChar(const LocalFieldSpec& f) : field_(f) {}
    LocalFieldSpec field_;
    std::optional<KElement> twist_;
};

/// psi composed with the trace from an unramified extension L down to the
/// base field of psi. For unramified extensions the level is unchanged.
class TracedAddChar final : public AdditiveCharacter {
public:
    TracedAddChar(const LocalFieldSpec& ext_field, AddChar base);

    LocalFieldSpec field() const override { return ext_field_; }
    int64_t level() const override { return base_.level(); }
    RootOfUnity eval_rou(const KElement& x) const override;

private:
    LocalFieldSpec ext_field_;
    AddChar base_;
};

/// Character of K^x (equivalently a Weil character through the reciprocity
/// map, uniformizers corresponding to geometric Frobenii). Determined by the
/// value at pi (any unit of the coefficient ring) and root-of-unity values on
/// the generators of (O_K/pi^a)^x; the stored conductor is always minimal.
class MulChar {
public:
    static MulChar from_exponents(const LocalFieldSpec& field, int declared_cond,
                                  CycNum pi_value, const std::vector<int64_t>& exps);
    static MulChar from_gen_values(const LocalFieldSpec& field, int declared_cond,
                                   CycNum pi_value, std::vector<RootOfUnity> vals);
    static MulChar trivial(const LocalFieldSpec& field);
    static MulChar unramified(const LocalFieldSpec& field, CycNum pi_value);
    // |.|_K: the unramified character with value 1/q at uniformizers
    static MulChar abs_char(const LocalFieldSpec& field);

    const LocalFieldSpec& field() const { return field_; }
    int conductor() const { return cond_; }
    int64_t swan() const { return cond_ >= 1 ? cond_ - 1 : 0; }
    bool is_unramified() const { return cond_ == 0; }
    const CycNum& pi_value() const { return pi_value_; }
    const std::vector<RootOfUnity>& gen_values() const { return gen_values_; }
    // lcm of the orders of the generator values
    int64_t unit_value_order() const { return unit_order_; }
    // unit group underlying the stored presentation (null when unramified)
    const UnitGroup* unit_group() const { return ug_; }

    // value on a unit of O/pi^m, m >= conductor
    RootOfUnity unit_value_rou(const RElem& u) const;
    CycNum eval(const KElement& x) const;

    MulChar mul(const MulChar& o) const;
    MulChar inverse() const;
    // chi o N_{L/K} on the unramified extension of degree fprime
    MulChar norm_inflation(int fprime) const;

    bool operator==(const MulChar& o) const;
    bool operator!=(const MulChar& o) const { return !(*this == o); }

private:
    MulChar(LocalFieldSpec f, CycNum piv) : field_(f), pi_value_(std::move(piv)) {}
    LocalFieldSpec field_;
    int cond_ = 0;
    CycNum pi_value_;
    const UnitGroup* ug_ = nullptr;
    std::vector<RootOfUnity> gen_values_;
    int64_t unit_order_ = 1;
};

/// Coefficient-ring-valued Haar measure, determined by the volume of O_K,
/// which must be a unit.
struct HaarMeasure {
    CycNum vol;

    explicit HaarMeasure(CycNum v);
};

// dual measure with respect to psi: vol * dual_vol = q^{-n(psi)}
HaarMeasure dual_measure(const HaarMeasure& dx, const AdditiveCharacter& psi);

} // namespace eps0
