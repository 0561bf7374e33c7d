#include "eps0/epsilon.hpp"

#include <algorithm>

namespace eps0 {

namespace {

Rat rational_q_power(int64_t q, int64_t e)
{
    if (e >= 0)
        return Rat(Int(ipow(q, static_cast<int>(e))));
    return Rat(1) / Rat(Int(ipow(q, static_cast<int>(-e))));
}

CycNum certify_unit(CycNum value, const char* what)
{
    if (!value.is_unit())
        throw TheoremViolation(std::string(what)
                               + ": computed value failed the unit certificate: "
                               + value.str());
    return value;
}

} // namespace

Eps0Result epsilon0_char(const MulChar& chi, const AdditiveCharacter& psi,
                         const HaarMeasure& dx)
{
    const LocalFieldSpec field = chi.field();
    if (psi.field() != field)
        throw Error("epsilon0: chi and psi live on different fields");
    int64_t p = field.p;
    int64_t q = field.q();
    int64_t n = psi.level();
    int64_t sw = chi.swan();
    int64_t vg = sw + n + 1;
    int M = std::max(chi.conductor(), 1);

    const QuotRing& ring = QuotRing::get(field, M);
    int64_t n_psi = field.kind == FieldKind::padic
                        ? ipow(p, static_cast<int>(sw) + 1)
                        : p;
    int64_t level = lcm64(n_psi, chi.unit_value_order());
    std::vector<Int> hist(static_cast<size_t>(level), Int(0));

    // On each coset pi^{-vg} u (1 + pi^M O) the integrand is constant and the
    // term is chi(pi)^{vg} chi(u)^{-1} psi(pi^{-vg} u); the pi part is pulled
    // out of the sum.
    ring.for_each_unit([&](const RElem& u) {
        RootOfUnity cv = chi.unit_value_rou(u);
        KElement x{field, -vg, u};
        RootOfUnity pv = psi.eval_rou(x);
        int64_t e = (level / cv.order) * ((cv.order - cv.exp) % cv.order)
            + (level / pv.order) * pv.exp;
        hist[static_cast<size_t>(e % level)] += 1;
    });

    CycNum value = CycNum::from_histogram(level, hist, p);
    value = value * chi.pi_value().pow(vg);
    value = value * rational_q_power(q, vg - M);
    value = value * dx.vol;
    value = certify_unit(std::move(value), "epsilon0_char");
    return Eps0Result{value, true, vg, value.level()};
}

Eps0Result epsilon0_char_with_gamma(const MulChar& chi, const AdditiveCharacter& psi,
                                    const HaarMeasure& dx, const KElement& gamma)
{
    if (gamma.field != chi.field())
        throw Error("gamma belongs to a different field");
    if (gamma.v != chi.swan() + psi.level() + 1)
        throw Error("gamma must have valuation Sw(chi) + n(psi) + 1");
    // the domain gamma^{-1} O^x depends only on v(gamma)
    return epsilon0_char(chi, psi, dx);
}

CycNum epsilon0_unramified_formula(const MulChar& theta, const AdditiveCharacter& psi,
                                   const HaarMeasure& dx)
{
    if (!theta.is_unramified())
        throw Error("closed form applies to unramified characters only");
    int64_t n = psi.level();
    int64_t q = theta.field().q();
    CycNum out = theta.pi_value().pow(n + 1) * rational_q_power(q, n) * dx.vol;
    return -out;
}

Eps0Result epsilon0_virtual(const VirtualRep& v, const AddChar& psi,
                            const HaarMeasure& dx)
{
    int64_t p = psi.field().p;
    // the zero class has epsilon factor 1
    CycNum acc = CycNum::one(p);
    for (const auto& [coef, atom] : v.terms()) {
        CycNum val = CycNum::one(p);
        if (atom.fprime == 1) {
            val = epsilon0_char(atom.chi, psi, dx).value;
        } else {
            LocalFieldSpec ext = atom.base.unram_ext(atom.fprime);
            TracedAddChar psi_tr(ext, psi);
            HaarMeasure dx_ext(dx.vol); // vol(O_L) := vol(O_K)
            CycNum e_chi = epsilon0_char(atom.chi, psi_tr, dx_ext).value;
            CycNum e_one = epsilon0_char(MulChar::trivial(ext), psi_tr, dx_ext).value;
            CycNum ind_one = CycNum::one(p);
            for (int j = 0; j < atom.fprime; ++j) {
                MulChar eta = MulChar::unramified(
                    atom.base, CycNum::root_of_unity(atom.fprime, j, p));
                ind_one = ind_one * epsilon0_char(eta, psi, dx).value;
            }
            val = e_chi * e_one.inv() * ind_one;
        }
        acc = acc * val.pow(coef);
    }
    acc = certify_unit(std::move(acc), "epsilon0_virtual");
    int64_t level = acc.level();
    return Eps0Result{std::move(acc), true, -1, level};
}

CycNum epsilon0_twist_formula(const VirtualRep& v, const MulChar& theta,
                              const AddChar& psi, const HaarMeasure& dx)
{
    if (!theta.is_unramified())
        throw Error("twist formula requires an unramified theta");
    int64_t e = v.swan() + v.rank() * (psi.level() + 1);
    return theta.pi_value().pow(e) * epsilon0_virtual(v, psi, dx).value;
}

CycNum epsilon0_tensor_unramified_formula(const VirtualRep& v, const VirtualRep& w,
                                          const AddChar& psi, const HaarMeasure& dx)
{
    int64_t p = psi.field().p;
    CycNum det_w = CycNum::one(p);
    for (const auto& [c, atom] : w.terms()) {
        if (atom.fprime != 1 || !atom.chi.is_unramified())
            throw Error("tensor formula requires an unramified base-atom sum");
        det_w = det_w * atom.chi.pi_value().pow(c);
    }
    int64_t e = v.swan() + v.rank() * (psi.level() + 1);
    CycNum base = epsilon0_virtual(v, psi, dx).value;
    return det_w.pow(e) * base.pow(w.rank());
}

CycNum epsilon_full(const VirtualRep& v, const AddChar& psi, const HaarMeasure& dx)
{
    int64_t p = psi.field().p;
    CycNum eps0 = epsilon0_virtual(v, psi, dx).value;
    CycNum det_frob = CycNum::one(p);
    for (const auto& [c, atom] : v.terms()) {
        if (atom.chi.is_unramified()) {
            // det(-Frob) on the induced space is -chi_L(pi_L)
            det_frob = det_frob * (-atom.chi.pi_value()).pow(c);
        }
    }
    return eps0 * det_frob.inv();
}

ExplicitInverseCheck explicit_inverse_check(const MulChar& chi, const AddChar& psi,
                                            const HaarMeasure& dx)
{
    int64_t p = chi.field().p;
    int64_t q = chi.field().q();
    CycNum first = epsilon0_char(chi, psi, dx).value;
    MulChar dual_chi = chi.inverse().mul(MulChar::abs_char(chi.field()));
    AddChar neg_psi = psi.negated();
    HaarMeasure dxhat = dual_measure(dx, psi);
    CycNum second = epsilon0_char(dual_chi, neg_psi, dxhat).value;
    CycNum product = first * second;
    int64_t rk_inv = chi.is_unramified() ? 1 : 0;
    CycNum expected = CycNum::from_rat(rational_q_power(q, -rk_inv), p);
    return ExplicitInverseCheck{first, second, product, expected, product == expected};
}

VirtualRep dual_abs_twist(const VirtualRep& v)
{
    VirtualRep out;
    for (const auto& [c, atom] : v.terms()) {
        MulChar dual_chi = atom.chi.inverse().mul(MulChar::abs_char(atom.chi.field()));
        out.add_term(c, Atom(atom.base, atom.fprime, std::move(dual_chi)));
    }
    return out;
}

ExplicitInverseCheck explicit_inverse_check_virtual(const VirtualRep& v,
                                                    const AddChar& psi,
                                                    const HaarMeasure& dx, int64_t l)
{
    int64_t p = psi.field().p;
    int64_t q = psi.field().q();
    CycNum first = epsilon0_virtual(v, psi, dx).value;
    AddChar neg_psi = psi.negated();
    HaarMeasure dxhat = dual_measure(dx, psi);
    CycNum second = epsilon0_virtual(dual_abs_twist(v), neg_psi, dxhat).value;
    CycNum product = first * second;
    CycNum expected =
        CycNum::from_rat(rational_q_power(q, -v.inertia_invariants_rank(l)), p);
    return ExplicitInverseCheck{first, second, product, expected, product == expected};
}

} // namespace eps0
