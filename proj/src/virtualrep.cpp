#include "eps0/virtualrep.hpp"

namespace eps0 {

Atom::Atom(LocalFieldSpec base_, int fprime_, MulChar chi_)
    : base(base_), fprime(fprime_), chi(std::move(chi_))
{
    if (fprime < 1)
        throw Error("atom extension degree must be >= 1");
    if (chi.field() != base.unram_ext(fprime))
        throw Error("atom character must live on the unramified extension of degree "
                    + std::to_string(fprime));
}

VirtualRep VirtualRep::single(Atom a, int64_t coef)
{
    VirtualRep v;
    v.add_term(coef, std::move(a));
    return v;
}

VirtualRep& VirtualRep::add_term(int64_t coef, Atom a)
{
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].second == a) {
            terms_[i].first += coef;
            if (terms_[i].first == 0)
                terms_.erase(terms_.begin() + static_cast<long>(i));
            return *this;
        }
    }
    if (coef != 0)
        terms_.emplace_back(coef, std::move(a));
    return *this;
}

VirtualRep VirtualRep::plus(const VirtualRep& o) const
{
    VirtualRep out = *this;
    for (const auto& [c, a] : o.terms_)
        out.add_term(c, a);
    return out;
}

VirtualRep VirtualRep::scaled(int64_t c) const
{
    VirtualRep out;
    if (c == 0)
        return out;
    for (const auto& [c0, a] : terms_)
        out.add_term(c0 * c, a);
    return out;
}

int64_t VirtualRep::rank() const
{
    int64_t r = 0;
    for (const auto& [c, a] : terms_)
        r += c * a.rank();
    return r;
}

int64_t VirtualRep::swan() const
{
    int64_t s = 0;
    for (const auto& [c, a] : terms_)
        s += c * a.swan();
    return s;
}

CycNum VirtualRep::det_at(const KElement& a) const
{
    CycNum out = CycNum::one(a.field.p);
    for (const auto& [c, atom] : terms_) {
        if (atom.fprime != 1)
            throw Error("det_at is defined for base-field atoms only");
        if (atom.base != a.field)
            throw Error("det_at: element belongs to a different field");
        out = out * atom.chi.eval(a).pow(c);
    }
    return out;
}

int64_t VirtualRep::inertia_invariants_rank(int64_t l) const
{
    int64_t r = 0;
    for (const auto& [c, atom] : terms_) {
        if (l != 0 && (!is_prime(l) || l == atom.base.p))
            throw Error("residue characteristic must be 0 or a prime different from p");
        if (atom.chi.is_unramified())
            r += c * atom.fprime;
    }
    return r;
}

VirtualRep decompose_galois_invariant_induction(const LocalFieldSpec& base, int fprime,
                                                const MulChar& chi0)
{
    if (chi0.field() != base)
        throw Error("decomposition expects a character of the base field");
    VirtualRep out;
    for (int j = 0; j < fprime; ++j) {
        MulChar eta = MulChar::unramified(
            base, CycNum::root_of_unity(fprime, j, base.p));
        out.add_term(1, Atom(base, 1, chi0.mul(eta)));
    }
    return out;
}

} // namespace eps0
