#include "eps0/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace eps0 {

int SuiteReport::failures() const
{
    int n = 0;
    for (const CaseResult& c : cases)
        n += c.pass ? 0 : 1;
    return n;
}

Json SuiteReport::to_json() const
{
    Json j;
    j["suite"] = suite;
    j["seed"] = seed;
    Json arr = Json::array();
    for (const CaseResult& c : cases) {
        Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        if (!c.detail.empty())
            cj["detail"] = c.detail;
        arr.push_back(cj);
    }
    j["cases"] = arr;
    j["total"] = cases.size();
    j["failures"] = failures();
    return j;
}

std::string SuiteReport::to_string() const { return dump_json(to_json()); }

namespace {

// run pure case thunks with a deterministic result order regardless of the
// thread count
std::vector<CaseResult> run_parallel(const std::vector<std::function<CaseResult()>>& thunks,
                                     int threads)
{
    std::vector<CaseResult> results(thunks.size());
    if (threads <= 1) {
        for (size_t i = 0; i < thunks.size(); ++i)
            results[i] = thunks[i]();
        return results;
    }
    std::mutex m;
    size_t next = 0;
    auto worker = [&] {
        while (true) {
            size_t i;
            {
                std::lock_guard<std::mutex> lk(m);
                if (next >= thunks.size())
                    return;
                i = next++;
            }
            results[i] = thunks[i]();
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    return results;
}

CaseResult check(const std::string& name, bool ok, const std::string& detail)
{
    return CaseResult{name, ok, ok ? std::string() : detail};
}

CaseResult guarded(const std::string& name, const std::function<CaseResult()>& body)
{
    try {
        return body();
    } catch (const std::exception& e) {
        return CaseResult{name, false, std::string("exception: ") + e.what()};
    }
}

const std::vector<LocalFieldSpec>& criterion1_fields()
{
    static const std::vector<LocalFieldSpec> fields = {
        LocalFieldSpec{FieldKind::padic, 3, 1},
        LocalFieldSpec{FieldKind::padic, 5, 1},
        LocalFieldSpec{FieldKind::laurent, 2, 2},
    };
    return fields;
}

// deterministic random unit of O/pi^m
RElem random_unit(SplitMix64& rng, const QuotRing& ring)
{
    while (true) {
        RElem e = ring.zero();
        if (ring.spec.kind == FieldKind::padic) {
            for (auto& c : e.c)
                c = static_cast<int64_t>(rng.below(static_cast<uint64_t>(ring.pm)));
        } else {
            for (auto& c : e.c)
                c = static_cast<int64_t>(rng.below(static_cast<uint64_t>(ring.spec.q())));
        }
        if (ring.is_unit(e))
            return e;
    }
}

CycNum random_coeff_unit(SplitMix64& rng, int64_t p)
{
    switch (rng.below(6)) {
    case 0:
        return CycNum::one(p);
    case 1:
        return -CycNum::one(p);
    case 2:
        return CycNum::from_rat(Rat(Int(p)), p);
    case 3:
        return CycNum::from_rat(Rat(1) / Rat(Int(p)), p);
    case 4:
        return CycNum::root_of_unity(3, 1 + static_cast<int64_t>(rng.below(2)), p);
    default:
        return CycNum::root_of_unity(4, 1, p);
    }
}

MulChar random_char(SplitMix64& rng, const LocalFieldSpec& field, int max_cond)
{
    int cond = static_cast<int>(rng.below(static_cast<uint64_t>(max_cond + 1)));
    CycNum piv = random_coeff_unit(rng, field.p);
    if (cond == 0)
        return MulChar::unramified(field, std::move(piv));
    const UnitGroup& ug = UnitGroup::get(QuotRing::get(field, cond));
    std::vector<int64_t> exps;
    for (int64_t d : ug.orders)
        exps.push_back(static_cast<int64_t>(rng.below(static_cast<uint64_t>(d))));
    return MulChar::from_exponents(field, cond, std::move(piv), exps);
}

} // namespace

std::vector<JobCase> criterion1_cases()
{
    std::vector<JobCase> cases;
    for (const LocalFieldSpec& field : criterion1_fields()) {
        const UnitGroup& ug = UnitGroup::get(QuotRing::get(field, 3));
        AddChar psi = AddChar::standard(field);
        HaarMeasure dx(CycNum::one(field.p));
        int64_t count = 1;
        for (int64_t d : ug.orders)
            count *= d;
        std::vector<int64_t> exps(ug.orders.size(), 0);
        for (int64_t idx = 0; idx < count; ++idx) {
            MulChar chi = MulChar::from_exponents(field, 3, CycNum::one(field.p), exps);
            cases.push_back(JobCase{field.str() + "#" + std::to_string(idx),
                                    std::move(chi), psi, dx});
            for (size_t i = exps.size(); i > 0; --i) {
                if (++exps[i - 1] < ug.orders[i - 1])
                    break;
                exps[i - 1] = 0;
            }
        }
    }
    return cases;
}

CycNum epsilon0_char_oracle(const MulChar& chi, const AdditiveCharacter& psi,
                            const HaarMeasure& dx)
{
    const LocalFieldSpec field = chi.field();
    int64_t p = field.p;
    int64_t q = field.q();
    int64_t n = psi.level();
    int64_t vg = chi.swan() + n + 1;
    int M = std::max(chi.conductor(), 1);
    // enumerate every coset of 1 + pi^{M+1} O inside gamma^{-1} O^x -- finer
    // than the integrand needs -- and sum the terms one by one
    const QuotRing& ring = QuotRing::get(field, M + 1);
    MulChar chi_inv = chi.inverse();
    CycNum acc = CycNum::zero(p);
    ring.for_each_unit([&](const RElem& u) {
        KElement x{field, -vg, u};
        CycNum term = chi_inv.eval(x) * psi.eval(x);
        acc = acc + term;
    });
    Rat coset_measure = vg - (M + 1) >= 0
        ? Rat(Int(ipow(q, static_cast<int>(vg) - (M + 1))))
        : Rat(1) / Rat(Int(ipow(q, (M + 1) - static_cast<int>(vg))));
    return acc * coset_measure * dx.vol;
}

SuiteReport run_gauss_oracle(int threads)
{
    SuiteReport rep;
    rep.suite = "gauss_oracle";
    std::vector<JobCase> cases = criterion1_cases();
    std::vector<std::function<CaseResult()>> thunks;
    for (const JobCase& jc : cases) {
        thunks.push_back([jc] {
            return guarded(jc.name, [&] {
                CycNum engine = epsilon0_char(jc.chi, jc.psi, jc.dx).value;
                CycNum oracle = epsilon0_char_oracle(jc.chi, jc.psi, jc.dx);
                return check(jc.name, engine == oracle,
                             "engine " + engine.str() + " != oracle " + oracle.str());
            });
        });
    }
    rep.cases = run_parallel(thunks, threads);
    return rep;
}

SuiteReport run_formulary(uint64_t seed, int threads)
{
    SuiteReport rep;
    rep.suite = "formulary";
    rep.seed = seed;
    static const std::vector<LocalFieldSpec> pool = {
        LocalFieldSpec{FieldKind::padic, 3, 1},  LocalFieldSpec{FieldKind::padic, 5, 1},
        LocalFieldSpec{FieldKind::padic, 7, 1},  LocalFieldSpec{FieldKind::padic, 2, 1},
        LocalFieldSpec{FieldKind::laurent, 2, 1}, LocalFieldSpec{FieldKind::laurent, 3, 1},
    };
    std::vector<std::function<CaseResult()>> thunks;
    constexpr int kPerProperty = 50;
    for (int i = 0; i < kPerProperty; ++i) {
        // additivity of atom sums
        thunks.push_back([seed, i] {
            std::string name = "additivity#" + std::to_string(i);
            return guarded(name, [&] {
                SplitMix64 rng(seed * 1000003ULL + static_cast<uint64_t>(i));
                const LocalFieldSpec& field = pool[rng.below(pool.size())];
                MulChar c1 = random_char(rng, field, 3);
                MulChar c2 = random_char(rng, field, 3);
                AddChar psi = AddChar::standard(field);
                HaarMeasure dx(random_coeff_unit(rng, field.p));
                VirtualRep v = VirtualRep::single(Atom(field, 1, c1))
                                   .plus(VirtualRep::single(Atom(field, 1, c2)));
                CycNum whole = epsilon0_virtual(v, psi, dx).value;
                CycNum split = epsilon0_char(c1, psi, dx).value
                    * epsilon0_char(c2, psi, dx).value;
                return check(name, whole == split,
                             whole.str() + " != " + split.str());
            });
        });
        // measure scaling by a^{rk}
        thunks.push_back([seed, i] {
            std::string name = "measure_scaling#" + std::to_string(i);
            return guarded(name, [&] {
                SplitMix64 rng(seed * 2000003ULL + static_cast<uint64_t>(i));
                const LocalFieldSpec& field = pool[rng.below(pool.size())];
                MulChar chi = random_char(rng, field, 3);
                AddChar psi = AddChar::standard(field);
                CycNum a = random_coeff_unit(rng, field.p);
                HaarMeasure dx(CycNum::one(field.p));
                HaarMeasure dx_scaled(a * dx.vol);
                CycNum lhs = epsilon0_char(chi, psi, dx_scaled).value;
                CycNum rhs = a * epsilon0_char(chi, psi, dx).value;
                if (lhs != rhs)
                    return check(name, false, "rank-1 scaling failed");
                // rank-2 sum scales by a^2
                MulChar chi2 = random_char(rng, field, 2);
                VirtualRep v = VirtualRep::single(Atom(field, 1, chi))
                                   .plus(VirtualRep::single(Atom(field, 1, chi2)));
                CycNum lhs2 = epsilon0_virtual(v, psi, dx_scaled).value;
                CycNum rhs2 = a * a * epsilon0_virtual(v, psi, dx).value;
                return check(name, lhs2 == rhs2, "rank-2 scaling failed");
            });
        });
        // change of additive character: (det V)(a) |a|^{-rk} eps0
        thunks.push_back([seed, i] {
            std::string name = "ch_psi#" + std::to_string(i);
            return guarded(name, [&] {
                SplitMix64 rng(seed * 3000017ULL + static_cast<uint64_t>(i));
                const LocalFieldSpec& field = pool[rng.below(pool.size())];
                MulChar chi = random_char(rng, field, 3);
                AddChar psi = AddChar::standard(field);
                HaarMeasure dx(CycNum::one(field.p));
                const QuotRing& ring = QuotRing::get(field, 8);
                int64_t va = rng.range(-2, 2);
                KElement a{field, va, random_unit(rng, ring)};
                CycNum lhs = epsilon0_char(chi, psi.twisted_by(a), dx).value;
                Rat qa = va >= 0 ? Rat(Int(ipow(field.q(), static_cast<int>(va))))
                                 : Rat(1) / Rat(Int(ipow(field.q(), static_cast<int>(-va))));
                CycNum rhs = chi.eval(a) * qa * epsilon0_char(chi, psi, dx).value;
                return check(name, lhs == rhs, lhs.str() + " != " + rhs.str());
            });
        });
        // unramified twist formula vs direct evaluation
        thunks.push_back([seed, i] {
            std::string name = "unr_twist#" + std::to_string(i);
            return guarded(name, [&] {
                SplitMix64 rng(seed * 4000037ULL + static_cast<uint64_t>(i));
                const LocalFieldSpec& field = pool[rng.below(pool.size())];
                MulChar chi = random_char(rng, field, 3);
                MulChar theta = MulChar::unramified(field, random_coeff_unit(rng, field.p));
                AddChar psi = AddChar::standard(field)
                                  .twisted_by(KElement::pi_pow(field, rng.range(-1, 2), 8));
                HaarMeasure dx(random_coeff_unit(rng, field.p));
                CycNum direct = epsilon0_char(chi.mul(theta), psi, dx).value;
                VirtualRep v = VirtualRep::single(Atom(field, 1, chi));
                CycNum formula = epsilon0_twist_formula(v, theta, psi, dx);
                return check(name, direct == formula,
                             direct.str() + " != " + formula.str());
            });
        });
        // explicit inverse identity
        thunks.push_back([seed, i] {
            std::string name = "expl_inv#" + std::to_string(i);
            return guarded(name, [&] {
                SplitMix64 rng(seed * 5000011ULL + static_cast<uint64_t>(i));
                const LocalFieldSpec& field = pool[rng.below(pool.size())];
                MulChar chi = random_char(rng, field, 3);
                AddChar psi = AddChar::standard(field)
                                  .twisted_by(KElement::pi_pow(field, rng.range(-1, 1), 8));
                HaarMeasure dx(random_coeff_unit(rng, field.p));
                ExplicitInverseCheck r = explicit_inverse_check(chi, psi, dx);
                return check(name, r.pass,
                             "product " + r.product.str() + " expected "
                                 + r.expected.str());
            });
        });
        // higher-rank explicit inverse on a two-atom sum
        thunks.push_back([seed, i] {
            std::string name = "expl_inv_sum#" + std::to_string(i);
            return guarded(name, [&] {
                SplitMix64 rng(seed * 6000101ULL + static_cast<uint64_t>(i));
                const LocalFieldSpec& field = pool[rng.below(pool.size())];
                VirtualRep v =
                    VirtualRep::single(Atom(field, 1, random_char(rng, field, 2)))
                        .plus(VirtualRep::single(Atom(field, 1, random_char(rng, field, 2)),
                                                 rng.below(2) ? 1 : -1));
                AddChar psi = AddChar::standard(field)
                                  .twisted_by(KElement::pi_pow(field, rng.range(-1, 1), 8));
                HaarMeasure dx(random_coeff_unit(rng, field.p));
                static const int64_t ells[] = {0, 7, 11, 13};
                int64_t l = ells[rng.below(4)];
                if (l == field.p)
                    l = 0;
                ExplicitInverseCheck r = explicit_inverse_check_virtual(v, psi, dx, l);
                return check(name, r.pass,
                             "product " + r.product.str() + " expected "
                                 + r.expected.str());
            });
        });
    }
    rep.cases = run_parallel(thunks, threads);
    return rep;
}

namespace {

struct InductionCase {
    std::string name;
    LocalFieldSpec field;
    int fprime;
    MulChar chi0;
};

std::vector<InductionCase> induction_cases()
{
    std::vector<InductionCase> out;
    for (const LocalFieldSpec field :
         {LocalFieldSpec{FieldKind::padic, 3, 1}, LocalFieldSpec{FieldKind::padic, 5, 1}}) {
        const UnitGroup& ug = UnitGroup::get(QuotRing::get(field, 2));
        int64_t count = 1;
        for (int64_t d : ug.orders)
            count *= d;
        int64_t take = std::min<int64_t>(count, 6);
        for (int fprime : {2, 3}) {
            for (int64_t ci = 0; ci < take; ++ci) {
                std::vector<int64_t> exps(ug.orders.size(), 0);
                int64_t rem = ci;
                for (size_t k = ug.orders.size(); k > 0; --k) {
                    exps[k - 1] = rem % ug.orders[k - 1];
                    rem /= ug.orders[k - 1];
                }
                MulChar chi0 =
                    MulChar::from_exponents(field, 2, CycNum::one(field.p), exps);
                std::string name = field.str() + "/f'=" + std::to_string(fprime)
                    + "/chi#" + std::to_string(ci);
                out.push_back(InductionCase{name, field, fprime, std::move(chi0)});
            }
        }
    }
    return out;
}

// the epsilon values both sides of the degree-0 identity are built from
std::vector<CycNum> induction_component_values(const InductionCase& ic)
{
    AddChar psi = AddChar::standard(ic.field);
    HaarMeasure dx(CycNum::one(ic.field.p));
    std::vector<CycNum> values;
    for (int j = 0; j < ic.fprime; ++j) {
        MulChar eta = MulChar::unramified(
            ic.field, CycNum::root_of_unity(ic.fprime, j, ic.field.p));
        values.push_back(epsilon0_char(ic.chi0.mul(eta), psi, dx).value);
        values.push_back(epsilon0_char(eta, psi, dx).value);
    }
    LocalFieldSpec ext = ic.field.unram_ext(ic.fprime);
    TracedAddChar psi_tr(ext, psi);
    values.push_back(epsilon0_char(ic.chi0.norm_inflation(ic.fprime), psi_tr, dx).value);
    values.push_back(epsilon0_char(MulChar::trivial(ext), psi_tr, dx).value);
    return values;
}

} // namespace

SuiteReport run_induction(int threads)
{
    SuiteReport rep;
    rep.suite = "induction";
    std::vector<std::function<CaseResult()>> thunks;
    for (const InductionCase& ic : induction_cases()) {
        thunks.push_back([ic] {
            return guarded(ic.name, [&] {
                AddChar psi = AddChar::standard(ic.field);
                HaarMeasure dx(CycNum::one(ic.field.p));
                int64_t p = ic.field.p;
                // lhs: sum over eta of [chi0*eta] - [eta], all on K
                CycNum lhs = CycNum::one(p);
                for (int j = 0; j < ic.fprime; ++j) {
                    MulChar eta = MulChar::unramified(
                        ic.field, CycNum::root_of_unity(ic.fprime, j, p));
                    lhs = lhs * epsilon0_char(ic.chi0.mul(eta), psi, dx).value;
                    lhs = lhs * epsilon0_char(eta, psi, dx).value.inv();
                }
                // rhs: [chi0 o N] - [1_L] over L with psi o Tr
                LocalFieldSpec ext = ic.field.unram_ext(ic.fprime);
                TracedAddChar psi_tr(ext, psi);
                HaarMeasure dx_ext(dx.vol);
                MulChar chi_l = ic.chi0.norm_inflation(ic.fprime);
                CycNum rhs = epsilon0_char(chi_l, psi_tr, dx_ext).value
                    * epsilon0_char(MulChar::trivial(ext), psi_tr, dx_ext).value.inv();
                return check(ic.name, lhs == rhs, lhs.str() + " != " + rhs.str());
            });
        });
    }
    rep.cases = run_parallel(thunks, threads);
    return rep;
}

SuiteReport run_reduction(int threads)
{
    SuiteReport rep;
    rep.suite = "reduction";
    std::vector<JobCase> cases = criterion1_cases();
    static const std::vector<int64_t> ells = {2, 5, 7, 11, 13};

    // the factorizations are shared across cases; build the maps up front so
    // parallel workers only read
    std::map<std::tuple<int64_t, int64_t, int64_t>, ReductionMap> maps; // (level, p, l)
    for (const JobCase& jc : cases) {
        int64_t level = job_level(jc.chi, jc.psi, jc.dx);
        for (int64_t l : ells) {
            if (l == jc.chi.field().p)
                continue;
            auto key = std::make_tuple(level, jc.chi.field().p, l);
            if (!maps.count(key))
                maps.emplace(key, ReductionMap::make(level, jc.chi.field().p, l));
        }
    }
    std::vector<std::function<CaseResult()>> thunks;
    for (const JobCase& jc : cases) {
        for (int64_t l : ells) {
            if (l == jc.chi.field().p)
                continue;
            std::string name = jc.name + "/l=" + std::to_string(l);
            thunks.push_back([&maps, jc, l, name] {
                return guarded(name, [&] {
                    int64_t level = job_level(jc.chi, jc.psi, jc.dx);
                    const ReductionMap& r =
                        maps.at(std::make_tuple(level, jc.chi.field().p, l));
                    CycNum char0 = epsilon0_char(jc.chi, jc.psi, jc.dx).value;
                    FinFieldElem lhs = epsilon0_mod_l(jc.chi, jc.psi, jc.dx, r);
                    FinFieldElem rhs = r.reduce(char0);
                    return check(name, lhs == rhs && !lhs.is_zero(),
                                 lhs.str() + " != " + rhs.str());
                });
            });
        }
    }
    rep.cases = run_parallel(thunks, threads);
    return rep;
}

SuiteReport run_swan()
{
    SuiteReport rep;
    rep.suite = "swan";
    for (int64_t p : {3, 5}) {
        for (int n : {1, 2}) {
            std::string base = "cyclotomic:p=" + std::to_string(p) + ",n="
                + std::to_string(n);
            rep.cases.push_back(guarded(base, [&] {
                CyclotomicFiltration cf = builtin_cyclotomic_filtration(p, n);
                const RamFiltration& filt = cf.filtration;
                ClassFunction artin = artin_character(filt);
                ClassFunction swan = swan_character(filt);
                AbelianCharacterTable table = abelian_characters(filt.group);
                LocalFieldSpec field{FieldKind::padic, p, 1};
                const QuotRing& ring = QuotRing::get(field, n);
                const UnitGroup& ug = UnitGroup::get(ring);
                std::map<int64_t, int> residue_index;
                for (size_t e = 0; e < cf.residues.size(); ++e)
                    residue_index[cf.residues[e]] = static_cast<int>(e);
                for (int64_t ci = 0; ci < table.count(); ++ci) {
                    std::vector<CycNum> values = table.values_of(ci, p);
                    Rat a_pair = conductor_pairing(artin, values);
                    Rat sw_pair = conductor_pairing(swan, values);
                    if (sw_pair < 0)
                        return check(base, false, "negative Swan pairing");
                    if (a_pair.get_den() != 1 || sw_pair.get_den() != 1)
                        return check(base, false, "non-integral pairing");
                    // the corresponding character of K^x: generator g of
                    // (O/pi^n)^x maps to the value of chi at g's residue
                    std::vector<RootOfUnity> vals;
                    for (const RElem& g : ug.gens)
                        vals.push_back(table.value(ci, residue_index.at(g.c[0])));
                    MulChar chi = MulChar::from_gen_values(field, n, CycNum::one(p),
                                                           std::move(vals));
                    if (Rat(static_cast<long>(chi.conductor())) != a_pair)
                        return check(base, false,
                                     "conductor mismatch at char "
                                         + std::to_string(ci));
                    if (Rat(static_cast<long>(chi.swan())) != sw_pair)
                        return check(base, false,
                                     "Swan mismatch at char " + std::to_string(ci));
                }
                return check(base, true, "");
            }));
            // quotient compatibility for the wild layer of n = 2
            if (n == 2) {
                std::string qname = base + "/quotient";
                rep.cases.push_back(guarded(qname, [&] {
                    CyclotomicFiltration cf = builtin_cyclotomic_filtration(p, 2);
                    const RamFiltration& filt = cf.filtration;
                    QuotientFiltration qf = quotient_filtration(filt, filt.chain[1]);
                    ClassFunction sw_full = swan_character(filt);
                    ClassFunction sw_quot = swan_character(qf.filtration);
                    ClassFunction a_full = artin_character(filt);
                    ClassFunction a_quot = artin_character(qf.filtration);
                    AbelianCharacterTable qtable = abelian_characters(qf.filtration.group);
                    for (int64_t ci = 0; ci < qtable.count(); ++ci) {
                        std::vector<CycNum> qvals = qtable.values_of(ci, p);
                        // inflate along the projection
                        std::vector<CycNum> inflated;
                        for (int e = 0; e < filt.group.n; ++e)
                            inflated.push_back(
                                qvals[static_cast<size_t>(qf.projection[static_cast<size_t>(e)])]);
                        if (conductor_pairing(sw_full, inflated)
                            != conductor_pairing(sw_quot, qvals))
                            return check(qname, false, "Swan quotient mismatch");
                        (void)a_full;
                        (void)a_quot;
                    }
                    return check(qname, true, "");
                }));
            }
        }
    }
    return rep;
}

SuiteReport run_units(uint64_t seed, int threads)
{
    SuiteReport rep;
    rep.suite = "units";
    rep.seed = seed;
    std::vector<std::function<CaseResult()>> thunks;
    // base family
    for (const JobCase& jc : criterion1_cases()) {
        std::string name = "base/" + jc.name;
        thunks.push_back([jc, name] {
            return guarded(name, [&] {
                CycNum v = epsilon0_char(jc.chi, jc.psi, jc.dx).value;
                Rat nrm = v.norm();
                return check(name, is_signed_p_power(nrm, jc.chi.field().p),
                             "norm " + nrm.get_str() + " is not +-p^k");
            });
        });
    }
    // seeded twisted cases
    for (int i = 0; i < 40; ++i) {
        std::string name = "twisted#" + std::to_string(i);
        thunks.push_back([seed, i, name] {
            return guarded(name, [&] {
                SplitMix64 rng(seed * 7000003ULL + static_cast<uint64_t>(i));
                static const std::vector<LocalFieldSpec> pool = {
                    LocalFieldSpec{FieldKind::padic, 3, 1},
                    LocalFieldSpec{FieldKind::padic, 5, 1},
                    LocalFieldSpec{FieldKind::padic, 2, 1},
                    LocalFieldSpec{FieldKind::laurent, 2, 1},
                };
                const LocalFieldSpec& field = pool[rng.below(pool.size())];
                MulChar chi = random_char(rng, field, 3);
                AddChar psi = AddChar::standard(field)
                                  .twisted_by(KElement::pi_pow(field, rng.range(-2, 2), 8));
                HaarMeasure dx(random_coeff_unit(rng, field.p));
                CycNum v = epsilon0_char(chi, psi, dx).value;
                Rat nrm = v.norm();
                return check(name, is_signed_p_power(nrm, field.p),
                             "norm " + nrm.get_str() + " is not +-p^k");
            });
        });
    }
    // every epsilon value the degree-0 inductivity identities are built from
    for (const InductionCase& ic : induction_cases()) {
        std::string name = "induction/" + ic.name;
        thunks.push_back([ic, name] {
            return guarded(name, [&] {
                for (const CycNum& v : induction_component_values(ic)) {
                    Rat nrm = v.norm();
                    if (!is_signed_p_power(nrm, ic.field.p))
                        return check(name, false,
                                     "norm " + nrm.get_str() + " is not +-p^k");
                }
                return check(name, true, "");
            });
        });
    }
    // induced atoms
    for (const LocalFieldSpec field :
         {LocalFieldSpec{FieldKind::padic, 3, 1}, LocalFieldSpec{FieldKind::padic, 5, 1}}) {
        for (int fprime : {2, 3}) {
            std::string name = field.str() + "/induced_f" + std::to_string(fprime);
            thunks.push_back([field, fprime, name] {
                return guarded(name, [&] {
                    AddChar psi = AddChar::standard(field);
                    HaarMeasure dx(CycNum::one(field.p));
                    LocalFieldSpec ext = field.unram_ext(fprime);
                    const UnitGroup& ug = UnitGroup::get(QuotRing::get(ext, 1));
                    std::vector<int64_t> exps(ug.orders.size(), 0);
                    if (!exps.empty())
                        exps[0] = 1;
                    MulChar chi_l =
                        MulChar::from_exponents(ext, 1, CycNum::one(field.p), exps);
                    VirtualRep v = VirtualRep::single(Atom(field, fprime, chi_l));
                    CycNum val = epsilon0_virtual(v, psi, dx).value;
                    Rat nrm = val.norm();
                    return check(name, is_signed_p_power(nrm, field.p),
                                 "norm " + nrm.get_str() + " is not +-p^k");
                });
            });
        }
    }
    rep.cases = run_parallel(thunks, threads);
    return rep;
}

SuiteReport run_suite(const std::string& name, uint64_t seed, int threads)
{
    if (name == "formulary")
        return run_formulary(seed, threads);
    if (name == "induction")
        return run_induction(threads);
    if (name == "reduction")
        return run_reduction(threads);
    if (name == "swan")
        return run_swan();
    if (name == "units")
        return run_units(seed, threads);
    throw Error("unknown suite \"" + name
                + "\" (expected formulary, induction, reduction, swan or units)");
}

} // namespace eps0
