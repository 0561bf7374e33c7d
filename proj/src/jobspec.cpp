#include "eps0/jobspec.hpp"

#include <algorithm>
#include <sstream>

namespace eps0 {

namespace {

Rat rat_from_string(const std::string& s)
{
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw Error("bad rational literal \"" + s + "\"");
    mpq_canonicalize(r.get_mpq_t());
    return r;
}

std::string csv_escape(std::string s)
{
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
}

} // namespace

Json cyc_to_json(const CycNum& a)
{
    Json j;
    j["level"] = a.level();
    j["p"] = a.banned_prime();
    Json coeffs = Json::array();
    for (const Rat& c : a.coeffs())
        coeffs.push_back(c.get_str());
    j["coeffs"] = coeffs;
    return j;
}

CycNum cyc_from_json(const Json& j, int64_t p)
{
    if (j.is_number_integer())
        return CycNum::from_rat(Rat(static_cast<long>(j.get<int64_t>())), p);
    if (j.is_string())
        return CycNum::from_rat(rat_from_string(j.get<std::string>()), p);
    if (!j.is_object())
        throw Error("cyclotomic value must be an object, string or integer");
    if (!j.contains("level") || !j.contains("coeffs"))
        throw Error("cyclotomic value needs \"level\" and \"coeffs\"");
    int64_t level = j.at("level").get<int64_t>();
    int64_t jp = j.contains("p") ? j.at("p").get<int64_t>() : p;
    if (jp != p)
        throw Error("cyclotomic value carries banned prime " + std::to_string(jp)
                    + " but the job requires " + std::to_string(p));
    std::vector<Rat> coeffs;
    for (const auto& c : j.at("coeffs")) {
        if (c.is_string())
            coeffs.push_back(rat_from_string(c.get<std::string>()));
        else if (c.is_number_integer())
            coeffs.push_back(Rat(static_cast<long>(c.get<int64_t>())));
        else
            throw Error("cyclotomic coefficient must be a string or integer");
    }
    return CycNum::from_coeffs(level, coeffs, p);
}

Json kelement_to_json(const KElement& x)
{
    Json j;
    j["v"] = x.v;
    j["m"] = x.prec();
    j["unit"] = x.u.c;
    return j;
}

KElement kelement_from_json(const Json& j, const LocalFieldSpec& field)
{
    if (j.is_number_integer()) // shorthand: pi^k
        return KElement::pi_pow(field, j.get<int64_t>(), 8);
    if (!j.is_object() || !j.contains("v") || !j.contains("unit"))
        throw Error("K-element needs \"v\" and \"unit\" (or an integer for pi^k)");
    int64_t v = j.at("v").get<int64_t>();
    int m = j.contains("m") ? j.at("m").get<int>() : 8;
    std::vector<int64_t> coeffs = j.at("unit").get<std::vector<int64_t>>();
    const QuotRing& ring = QuotRing::get(field, m);
    return KElement::make(field, v, ring.make(std::move(coeffs)));
}

Json unit_group_to_json(const UnitGroup& ug)
{
    Json j;
    j["ring"] = ug.ring->spec.str() + "/pi^" + std::to_string(ug.ring->m);
    Json gens = Json::array();
    for (const RElem& g : ug.gens)
        gens.push_back(g.c);
    j["generators"] = gens;
    j["orders"] = ug.orders;
    return j;
}

MulChar char_from_json(const Json& j)
{
    if (!j.is_object())
        throw Error("character spec must be a JSON object");
    if (!j.contains("field"))
        throw Error("character spec needs a \"field\" descriptor");
    LocalFieldSpec field = LocalFieldSpec::parse(j.at("field").get<std::string>());
    int cond = j.contains("cond") ? j.at("cond").get<int>() : 0;
    CycNum piv = j.contains("pi_value") ? cyc_from_json(j.at("pi_value"), field.p)
                                        : CycNum::one(field.p);
    if (j.contains("gen_values")) {
        // the echoed form: explicit (order, exp) root-of-unity values
        std::vector<RootOfUnity> vals;
        for (const auto& v : j.at("gen_values"))
            vals.push_back(RootOfUnity::make(v.at("order").get<int64_t>(),
                                             v.at("exp").get<int64_t>()));
        return MulChar::from_gen_values(field, cond, std::move(piv), std::move(vals));
    }
    std::vector<int64_t> exps;
    if (j.contains("unit_exps"))
        exps = j.at("unit_exps").get<std::vector<int64_t>>();
    return MulChar::from_exponents(field, cond, std::move(piv), exps);
}

Json char_to_json(const MulChar& chi)
{
    Json j;
    j["field"] = chi.field().str();
    j["cond"] = chi.conductor();
    j["pi_value"] = cyc_to_json(chi.pi_value());
    Json vals = Json::array();
    for (const RootOfUnity& r : chi.gen_values()) {
        Json v;
        v["order"] = r.order;
        v["exp"] = r.exp;
        vals.push_back(v);
    }
    j["gen_values"] = vals;
    return j;
}

AddChar psi_from_json(const Json& j, const LocalFieldSpec& field)
{
    AddChar psi = AddChar::standard(field);
    if (j.is_null())
        return psi;
    if (j.is_number_integer())
        return psi.twisted_by(KElement::pi_pow(field, j.get<int64_t>(), 8));
    if (j.is_object() && j.contains("twist"))
        return psi.twisted_by(kelement_from_json(j.at("twist"), field));
    throw Error("psi spec must be null, an integer valuation, or {\"twist\": ...}");
}

HaarMeasure vol_from_json(const Json& j, int64_t p)
{
    if (j.is_null())
        return HaarMeasure(CycNum::one(p));
    if (j.is_object() && j.contains("vol"))
        return HaarMeasure(cyc_from_json(j.at("vol"), p));
    return HaarMeasure(cyc_from_json(j, p));
}

VirtualRep vrep_from_json(const Json& j)
{
    if (!j.is_array() || j.empty())
        throw Error("virtual representation spec must be a nonempty array of terms");
    VirtualRep out;
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("atom"))
            throw Error("virtual representation term needs an \"atom\"");
        int64_t coef = term.contains("coef") ? term.at("coef").get<int64_t>() : 1;
        const Json& atom = term.at("atom");
        int fprime = atom.contains("f") ? atom.at("f").get<int>() : 1;
        MulChar chi = char_from_json(atom.at("char"));
        LocalFieldSpec ext = chi.field();
        if (fprime < 1 || ext.f % fprime != 0)
            throw Error("atom extension degree does not divide the character's field");
        LocalFieldSpec base{ext.kind, ext.p, ext.f / fprime};
        out.add_term(coef, Atom(base, fprime, std::move(chi)));
    }
    return out;
}

Json vrep_to_json(const VirtualRep& v)
{
    Json arr = Json::array();
    for (const auto& [coef, atom] : v.terms()) {
        Json term;
        term["coef"] = coef;
        term["atom"]["f"] = atom.fprime;
        term["atom"]["char"] = char_to_json(atom.chi);
        arr.push_back(term);
    }
    return arr;
}

Json compute_virtual_record(const VirtualRep& v, const AddChar& psi,
                            const HaarMeasure& dx)
{
    Eps0Result res = epsilon0_virtual(v, psi, dx);
    Json j;
    j["field"] = psi.field().str();
    j["vrep"] = vrep_to_json(v);
    j["rank"] = v.rank();
    j["swan"] = v.swan();
    j["n_psi"] = psi.level();
    j["vol"] = cyc_to_json(dx.vol);
    j["value"] = cyc_to_json(res.value);
    j["value_str"] = res.value.str();
    j["level"] = res.level;
    j["norm"] = res.value.norm().get_str();
    j["is_unit"] = res.certified_unit;
    j["epsilon_full"] = cyc_to_json(epsilon_full(v, psi, dx));
    return j;
}

Json compute_record(const MulChar& chi, const AddChar& psi, const HaarMeasure& dx)
{
    Eps0Result res = epsilon0_char(chi, psi, dx);
    Json j;
    j["field"] = chi.field().str();
    j["char"] = char_to_json(chi);
    j["n_psi"] = psi.level();
    j["vol"] = cyc_to_json(dx.vol);
    j["gamma_valuation"] = res.gamma_valuation;
    j["value"] = cyc_to_json(res.value);
    j["value_str"] = res.value.str();
    j["level"] = res.level;
    j["norm"] = res.value.norm().get_str();
    j["is_unit"] = res.certified_unit;
    VirtualRep v = VirtualRep::single(Atom(chi.field(), 1, chi));
    j["epsilon_full"] = cyc_to_json(epsilon_full(v, psi, dx));
    if (chi.conductor() >= 1)
        j["unit_group"] = unit_group_to_json(*chi.unit_group());
    return j;
}

std::string table_csv(const LocalFieldSpec& field, int max_cond, const CycNum& pi_value,
                      const AddChar& psi, const HaarMeasure& dx, size_t cap)
{
    if (max_cond < 1)
        throw Error("table needs a conductor bound >= 1");
    std::ostringstream os;
    os << "field,cond,pi_value,unit_exps,n_psi,vol,value,norm\n";
    const UnitGroup& ug = UnitGroup::get(QuotRing::get(field, max_cond));
    int64_t count = 1;
    for (int64_t d : ug.orders)
        count *= d;
    if (static_cast<size_t>(count) > cap)
        throw Error("character family size " + std::to_string(count)
                    + " exceeds the cap " + std::to_string(cap));
    std::vector<int64_t> exps(ug.orders.size(), 0);
    for (int64_t idx = 0; idx < count; ++idx) {
        MulChar chi = MulChar::from_exponents(field, max_cond, pi_value, exps);
        Eps0Result res = epsilon0_char(chi, psi, dx);
        os << field.str() << "," << chi.conductor() << ","
           << csv_escape(pi_value.str()) << ",\"";
        for (size_t i = 0; i < exps.size(); ++i)
            os << (i ? ";" : "") << exps[i];
        os << "\"," << psi.level() << "," << csv_escape(dx.vol.str()) << ","
           << csv_escape(res.value.str()) << "," << res.value.norm().get_str() << "\n";
        // odometer over the exponent box
        for (size_t i = exps.size(); i > 0; --i) {
            if (++exps[i - 1] < ug.orders[i - 1])
                break;
            exps[i - 1] = 0;
        }
    }
    return os.str();
}

namespace {

Json swan_record(const RamFiltration& filt, int64_t p_for_values)
{
    const FiniteGroup& g = filt.group;
    ClassFunction artin = artin_character(filt);
    ClassFunction swan = swan_character(filt);
    Json j;
    j["group_order"] = g.n;
    Json classes = Json::array();
    for (size_t c = 0; c < g.classes.size(); ++c) {
        Json cj;
        cj["representative"] = g.classes[c][0];
        cj["size"] = g.classes[c].size();
        cj["artin"] = artin.values[c].get_str();
        cj["swan"] = swan.values[c].get_str();
        classes.push_back(cj);
    }
    j["classes"] = classes;
    // pairings against every 1-dimensional character when the group is abelian
    bool abelian = true;
    for (int a = 0; a < g.n && abelian; ++a)
        for (int b = 0; b < g.n; ++b)
            if (g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)]
                != g.mul[static_cast<size_t>(b)][static_cast<size_t>(a)]) {
                abelian = false;
                break;
            }
    if (abelian) {
        AbelianCharacterTable table = abelian_characters(g);
        Json chars = Json::array();
        for (int64_t ci = 0; ci < table.count(); ++ci) {
            std::vector<CycNum> values = table.values_of(ci, p_for_values);
            Json cj;
            cj["exps"] = table.exponents_of(ci);
            cj["artin_pairing"] = conductor_pairing(artin, values).get_str();
            cj["swan_pairing"] = conductor_pairing(swan, values).get_str();
            chars.push_back(cj);
        }
        j["characters"] = chars;
        Json orders = Json::array();
        for (int64_t o : table.basis_orders)
            orders.push_back(o);
        j["character_basis_orders"] = orders;
    }
    return j;
}

} // namespace

Json swan_record_builtin(int64_t p, int n)
{
    CyclotomicFiltration cf = builtin_cyclotomic_filtration(p, n);
    Json j = swan_record(cf.filtration, p);
    j["filtration"] = "cyclotomic:p=" + std::to_string(p) + ",n=" + std::to_string(n);
    Json residues = Json::array();
    for (int64_t r : cf.residues)
        residues.push_back(r);
    j["residues"] = residues;
    return j;
}

Json swan_record_from_fixture(const Json& fixture)
{
    if (!fixture.contains("mul") || !fixture.contains("chain"))
        throw Error("filtration fixture needs \"mul\" and \"chain\"");
    FiniteGroup g =
        FiniteGroup::from_table(fixture.at("mul").get<std::vector<std::vector<int>>>());
    RamFiltration filt = RamFiltration::make(
        std::move(g), fixture.at("chain").get<std::vector<std::vector<int>>>());
    int64_t p = fixture.contains("p") ? fixture.at("p").get<int64_t>() : 2;
    Json j = swan_record(filt, p);
    if (fixture.contains("name"))
        j["filtration"] = fixture.at("name").get<std::string>();
    return j;
}

Json reduce_record(const MulChar& chi, const AddChar& psi, const HaarMeasure& dx,
                   int64_t l)
{
    Eps0Result char0 = epsilon0_char(chi, psi, dx);
    int64_t level = job_level(chi, psi, dx);
    ReductionMap r = ReductionMap::make(level, chi.field().p, l);
    FinFieldElem reduced = r.reduce(char0.value);
    FinFieldElem direct = epsilon0_mod_l(chi, psi, dx, r);
    Json j;
    j["field"] = chi.field().str();
    j["l"] = l;
    j["cyclotomic_level"] = level;
    j["residue_degree"] = r.d();
    j["modulus"] = r.modulus();
    j["char0_value"] = cyc_to_json(char0.value);
    j["reduced_value"] = reduced.rep;
    j["mod_l_value"] = direct.rep;
    j["agree"] = (reduced == direct);
    return j;
}

std::string dump_json(const Json& j) { return j.dump(2); }

} // namespace eps0
