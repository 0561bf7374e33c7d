#include "eps0/chars.hpp"

#include <algorithm>

namespace eps0 {

namespace {
constexpr int kDefaultTwistPrec = 12;
}

// ---------------------------------------------------------------- RootOfUnity

RootOfUnity RootOfUnity::make(int64_t order, int64_t exp)
{
    if (order < 1)
        throw Error("root of unity needs positive order");
    int64_t e = exp % order;
    if (e < 0)
        e += order;
    if (e == 0)
        return RootOfUnity{1, 0};
    int64_t g = gcd64(e, order);
    return RootOfUnity{order / g, e / g};
}

RootOfUnity RootOfUnity::mul(const RootOfUnity& o) const
{
    int64_t n = lcm64(order, o.order);
    return make(n, exp * (n / order) + o.exp * (n / o.order));
}

// -------------------------------------------------------------------- AddChar

AddChar AddChar::standard(const LocalFieldSpec& field) { return AddChar(field); }

AddChar AddChar::twisted_by(const KElement& a) const
{
    if (a.field != field_)
        throw Error("additive character twist from a different field");
    AddChar out(field_);
    out.twist_ = twist_ ? twist_->mul(a) : a;
    return out;
}

AddChar AddChar::negated() const
{
    int m = twist_ ? twist_->prec() : kDefaultTwistPrec;
    return twisted_by(KElement::from_int_unit(field_, 0, -1, m));
}

namespace {

// psi_0 at x with v(x) < 0; the caller has already applied any twist
RootOfUnity standard_eval(const LocalFieldSpec& field, const KElement& x)
{
    if (x.v >= 0)
        return RootOfUnity::one();
    int k = static_cast<int>(-x.v);
    if (x.prec() < k)
        throw Error("additive character: unit part known to insufficient precision");
    if (field.kind == FieldKind::padic) {
        RElem u = x.u.ring->reduce_to(x.u, k);
        int64_t c;
        if (field.f == 1) {
            c = u.c[0];
        } else {
            LocalFieldSpec prime_base{FieldKind::padic, field.p, 1};
            RElem tr = trace_to_base(u, prime_base);
            c = tr.c[0];
        }
        return RootOfUnity::make(ipow(field.p, k), c);
    }
    // Laurent series: only the t^{-1} coefficient matters
    int64_t a = x.u.c[static_cast<size_t>(k - 1)];
    int64_t c = x.u.ring->residue_field->trace_to_prime(a);
    return RootOfUnity::make(field.p, c);
}

} // namespace

RootOfUnity AddChar::eval_rou(const KElement& x) const
{
    if (x.field != field_)
        throw Error("additive character evaluated on a different field");
    KElement ax = twist_ ? twist_->mul(x) : x;
    return standard_eval(field_, ax);
}

// -------------------------------------------------------------- TracedAddChar

TracedAddChar::TracedAddChar(const LocalFieldSpec& ext_field, AddChar base)
    : ext_field_(ext_field), base_(std::move(base))
{
    const LocalFieldSpec bf = base_.field();
    if (ext_field.kind != bf.kind || ext_field.p != bf.p || ext_field.f % bf.f != 0)
        throw Error("traced character: not an unramified extension of the base");
}

RootOfUnity TracedAddChar::eval_rou(const KElement& x) const
{
    if (x.field != ext_field_)
        throw Error("traced character evaluated on a different field");
    const LocalFieldSpec bf = base_.field();
    RElem tr = trace_to_base(x.u, bf);
    int m = x.prec();
    int w = tr.ring->val(tr);
    if (w == m) {
        // trace of the unit part vanishes at this precision, so
        // v(Tr x) >= x.v + m
        if (x.v + m >= -base_.level())
            return RootOfUnity::one();
        throw Error("traced character: insufficient precision");
    }
    KElement y{bf, x.v + w, tr.ring->shift_down(tr, w)};
    return base_.eval_rou(y);
}

// -------------------------------------------------------------------- MulChar

MulChar MulChar::from_exponents(const LocalFieldSpec& field, int declared_cond,
                                CycNum pi_value, const std::vector<int64_t>& exps)
{
    std::vector<RootOfUnity> vals;
    if (declared_cond >= 1) {
        const UnitGroup& ug = UnitGroup::get(QuotRing::get(field, declared_cond));
        if (exps.size() != ug.gens.size())
            throw Error("character exponent vector must match the generator count ("
                        + std::to_string(ug.gens.size()) + " expected)");
        for (size_t i = 0; i < exps.size(); ++i)
            vals.push_back(RootOfUnity::make(ug.orders[i], exps[i]));
    } else if (!exps.empty()) {
        throw Error("unramified character takes an empty exponent vector");
    }
    return from_gen_values(field, declared_cond, std::move(pi_value), std::move(vals));
}

MulChar MulChar::from_gen_values(const LocalFieldSpec& field, int declared_cond,
                                 CycNum pi_value, std::vector<RootOfUnity> vals)
{
    if (declared_cond < 0)
        throw Error("conductor exponent must be nonnegative");
    if (pi_value.banned_prime() != field.p)
        throw Error("pi value lives over the wrong banned prime");
    if (!pi_value.is_unit())
        throw Error("pi value must be a unit of the coefficient ring");
    MulChar out(field, std::move(pi_value));
    if (declared_cond == 0) {
        if (!vals.empty())
            throw Error("unramified character takes no generator values");
        return out;
    }
    const UnitGroup& ug = UnitGroup::get(QuotRing::get(field, declared_cond));
    if (vals.size() != ug.gens.size())
        throw Error("generator value vector has the wrong length");
    for (size_t i = 0; i < vals.size(); ++i) {
        if ((vals[i].exp * ug.orders[i]) % vals[i].order != 0)
            throw Error("generator value order does not divide the generator order");
    }
    out.cond_ = declared_cond;
    out.ug_ = &ug;
    out.gen_values_ = std::move(vals);
    {
        int64_t ord = 1;
        for (const RootOfUnity& r : out.gen_values_)
            ord = lcm64(ord, r.order);
        out.unit_order_ = ord;
    }

    // evaluate on a unit of the declared ring through the dlog table
    auto eval_declared = [&](const RElem& u) {
        RootOfUnity r = RootOfUnity::one();
        std::vector<int64_t> exps = ug.dlog(u);
        for (size_t i = 0; i < exps.size(); ++i)
            r = r.mul(out.gen_values_[i].pow(exps[i]));
        return r;
    };

    // minimal conductor: smallest a with chi trivial on 1 + pi^a O
    const QuotRing& ring = *ug.ring;
    int minimal = declared_cond;
    for (int a = 0; a < declared_cond; ++a) {
        bool trivial = true;
        if (a == 0) {
            for (const RElem& u : ug.units) {
                if (!eval_declared(u).is_one()) {
                    trivial = false;
                    break;
                }
            }
        } else {
            const QuotRing& wring = QuotRing::get(field, declared_cond - a);
            wring.for_each_element([&](const RElem& w) {
                if (!trivial)
                    return;
                // u = 1 + pi^a * w inside the declared ring
                RElem u = ring.one();
                if (field.kind == FieldKind::padic) {
                    int64_t pa = ipow(field.p, a);
                    for (size_t i = 0; i < w.c.size(); ++i)
                        u.c[i] = (u.c[i] + w.c[i] % ring.pm * pa) % ring.pm;
                } else {
                    for (size_t i = 0; i < w.c.size(); ++i)
                        u.c[i + static_cast<size_t>(a)] = w.c[i];
                }
                if (!eval_declared(u).is_one())
                    trivial = false;
            });
        }
        if (trivial) {
            minimal = a;
            break;
        }
    }
    if (minimal == declared_cond)
        return out;
    if (minimal == 0) {
        out.cond_ = 0;
        out.ug_ = nullptr;
        out.gen_values_.clear();
        out.unit_order_ = 1;
        return out;
    }
    const UnitGroup& mug = UnitGroup::get(QuotRing::get(field, minimal));
    std::vector<RootOfUnity> mvals;
    mvals.reserve(mug.gens.size());
    for (const RElem& g : mug.gens)
        mvals.push_back(eval_declared(g.ring->lift_to(g, declared_cond)));
    MulChar reduced(field, out.pi_value_);
    reduced.cond_ = minimal;
    reduced.ug_ = &mug;
    reduced.gen_values_ = std::move(mvals);
    int64_t ord = 1;
    for (const RootOfUnity& r : reduced.gen_values_)
        ord = lcm64(ord, r.order);
    reduced.unit_order_ = ord;
    return reduced;
}

MulChar MulChar::trivial(const LocalFieldSpec& field)
{
    return unramified(field, CycNum::one(field.p));
}

MulChar MulChar::unramified(const LocalFieldSpec& field, CycNum pi_value)
{
    return from_gen_values(field, 0, std::move(pi_value), {});
}

MulChar MulChar::abs_char(const LocalFieldSpec& field)
{
    Rat inv_q = Rat(1) / Rat(field.q());
    return unramified(field, CycNum::from_rat(inv_q, field.p));
}

RootOfUnity MulChar::unit_value_rou(const RElem& u) const
{
    if (cond_ == 0)
        return RootOfUnity::one();
    if (u.ring->spec != field_)
        throw Error("character evaluated on a unit of the wrong field");
    if (u.ring->m < cond_)
        throw Error("unit known to insufficient precision for this character");
    RElem ured = u.ring->reduce_to(u, cond_);
    std::vector<int64_t> exps = ug_->dlog(ured);
    RootOfUnity r = RootOfUnity::one();
    for (size_t i = 0; i < exps.size(); ++i)
        r = r.mul(gen_values_[i].pow(exps[i]));
    return r;
}

CycNum MulChar::eval(const KElement& x) const
{
    if (x.field != field_)
        throw Error("character evaluated on the wrong field");
    CycNum val = unit_value_rou(x.u).to_cyc(field_.p);
    if (x.v != 0)
        val = val * pi_value_.pow(x.v);
    return val;
}

MulChar MulChar::mul(const MulChar& o) const
{
    if (field_ != o.field_)
        throw Error("character product across different fields");
    CycNum piv = pi_value_ * o.pi_value_;
    int a = std::max(cond_, o.cond_);
    if (a == 0)
        return unramified(field_, std::move(piv));
    const UnitGroup& ug = UnitGroup::get(QuotRing::get(field_, a));
    std::vector<RootOfUnity> vals;
    vals.reserve(ug.gens.size());
    for (const RElem& g : ug.gens)
        vals.push_back(unit_value_rou(g).mul(o.unit_value_rou(g)));
    return from_gen_values(field_, a, std::move(piv), std::move(vals));
}

MulChar MulChar::inverse() const
{
    std::vector<RootOfUnity> vals;
    vals.reserve(gen_values_.size());
    for (const RootOfUnity& r : gen_values_)
        vals.push_back(r.inv());
    return from_gen_values(field_, cond_, pi_value_.inv(), std::move(vals));
}

MulChar MulChar::norm_inflation(int fprime) const
{
    LocalFieldSpec ext = field_.unram_ext(fprime);
    CycNum piv = pi_value_.pow(fprime); // N(pi_L) = pi^{f'} for unramified L/K
    if (cond_ == 0)
        return unramified(ext, std::move(piv));
    const UnitGroup& ug = UnitGroup::get(QuotRing::get(ext, cond_));
    std::vector<RootOfUnity> vals;
    vals.reserve(ug.gens.size());
    for (const RElem& g : ug.gens)
        vals.push_back(unit_value_rou(norm_to_base(g, field_)));
    return from_gen_values(ext, cond_, std::move(piv), std::move(vals));
}

bool MulChar::operator==(const MulChar& o) const
{
    return field_ == o.field_ && cond_ == o.cond_ && gen_values_ == o.gen_values_
        && pi_value_ == o.pi_value_;
}

// ---------------------------------------------------------------- HaarMeasure

HaarMeasure::HaarMeasure(CycNum v) : vol(std::move(v))
{
    if (!vol.is_unit())
        throw Error("Haar measure volume must be a unit of the coefficient ring");
}

HaarMeasure dual_measure(const HaarMeasure& dx, const AdditiveCharacter& psi)
{
    int64_t q = psi.field().q();
    int64_t n = psi.level();
    Rat qn = n >= 0 ? Rat(1) / Rat(ipow(q, static_cast<int>(n)))
                    : Rat(ipow(q, static_cast<int>(-n)));
    return HaarMeasure(dx.vol.inv() * qn);
}

} // namespace eps0
