#include "eps0/swan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "eps0/abelian.hpp"

namespace eps0 {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table)
{
    FiniteGroup g;
    g.n = static_cast<int>(table.size());
    if (g.n == 0 || g.n > 512)
        throw Error("group size beyond the supported enumeration range");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != g.n)
            throw Error("multiplication table is not square");
        for (int v : row)
            if (v < 0 || v >= g.n)
                throw Error("multiplication table entry out of range");
    }
    g.mul = std::move(table);
    for (int a = 0; a < g.n; ++a)
        if (g.mul[0][a] != a || g.mul[a][0] != a)
            throw Error("element 0 is not the identity");
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            for (int c = 0; c < g.n; ++c)
                if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]])
                    throw Error("multiplication table is not associative");
    g.inverse.assign(static_cast<size_t>(g.n), -1);
    for (int a = 0; a < g.n; ++a) {
        for (int b = 0; b < g.n; ++b) {
            if (g.mul[a][b] == 0) {
                g.inverse[static_cast<size_t>(a)] = b;
                break;
            }
        }
        if (g.inverse[static_cast<size_t>(a)] < 0)
            throw Error("element without inverse");
    }
    // conjugacy classes
    g.class_of.assign(static_cast<size_t>(g.n), -1);
    for (int a = 0; a < g.n; ++a) {
        if (g.class_of[static_cast<size_t>(a)] >= 0)
            continue;
        int idx = static_cast<int>(g.classes.size());
        std::vector<int> cls;
        for (int x = 0; x < g.n; ++x) {
            int y = g.mul[g.mul[x][a]][g.inverse[static_cast<size_t>(x)]];
            if (g.class_of[static_cast<size_t>(y)] < 0) {
                g.class_of[static_cast<size_t>(y)] = idx;
                cls.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        g.classes.push_back(std::move(cls));
    }
    return g;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& subset) const
{
    std::set<int> s(subset.begin(), subset.end());
    if (!s.count(0))
        return false;
    for (int a : subset)
        for (int b : subset)
            if (!s.count(mul[static_cast<size_t>(a)][static_cast<size_t>(b)]))
                return false;
    return true;
}

bool FiniteGroup::is_normal(const std::vector<int>& subset) const
{
    std::set<int> s(subset.begin(), subset.end());
    for (int h : subset)
        for (int x = 0; x < n; ++x) {
            int y = mul[static_cast<size_t>(mul[static_cast<size_t>(x)][static_cast<size_t>(h)])]
                       [static_cast<size_t>(inverse[static_cast<size_t>(x)])];
            if (!s.count(y))
                return false;
        }
    return true;
}

RamFiltration RamFiltration::make(FiniteGroup g, std::vector<std::vector<int>> chain)
{
    if (chain.empty())
        throw Error("filtration chain is empty");
    for (auto& c : chain)
        std::sort(c.begin(), c.end());
    if (static_cast<int>(chain.front().size()) != g.n)
        throw Error("J_0 must be the full group");
    if (chain.back() != std::vector<int>{0})
        throw Error("the filtration must end at the trivial subgroup");
    for (size_t i = 0; i < chain.size(); ++i) {
        if (!g.is_subgroup(chain[i]) || !g.is_normal(chain[i]))
            throw Error("J_" + std::to_string(i) + " is not a normal subgroup");
        if (i > 0
            && !std::includes(chain[i - 1].begin(), chain[i - 1].end(), chain[i].begin(),
                              chain[i].end()))
            throw Error("filtration chain is not descending");
    }
    RamFiltration f;
    f.group = std::move(g);
    f.chain = std::move(chain);
    return f;
}

namespace {

// Ind_{H}^{G} phi for a class function phi on normal H, as per-element values:
// (1/|H|) sum_{x in G, x^{-1} g x in H} phi(x^{-1} g x)
std::vector<Rat> induce_from_normal(const FiniteGroup& g, const std::vector<int>& sub,
                                    const std::vector<Rat>& phi_on_sub)
{
    std::set<int> s(sub.begin(), sub.end());
    std::map<int, Rat> phi;
    for (size_t i = 0; i < sub.size(); ++i)
        phi[sub[i]] = phi_on_sub[i];
    std::vector<Rat> out(static_cast<size_t>(g.n), Rat(0));
    for (int e = 0; e < g.n; ++e) {
        Rat acc(0);
        for (int x = 0; x < g.n; ++x) {
            int conj = g.mul[static_cast<size_t>(
                g.mul[static_cast<size_t>(g.inverse[static_cast<size_t>(x)])]
                     [static_cast<size_t>(e)])][static_cast<size_t>(x)];
            if (s.count(conj))
                acc += phi.at(conj);
        }
        out[static_cast<size_t>(e)] = acc / Rat(static_cast<long>(sub.size()));
    }
    return out;
}

ClassFunction ramification_sum(const RamFiltration& f, size_t start)
{
    const FiniteGroup& g = f.group;
    std::vector<Rat> per_elem(static_cast<size_t>(g.n), Rat(0));
    for (size_t i = start; i < f.chain.size(); ++i) {
        const std::vector<int>& ji = f.chain[i];
        if (ji.size() == 1)
            break; // trivial terms vanish from here on
        std::vector<Rat> aug(ji.size());
        for (size_t k = 0; k < ji.size(); ++k)
            aug[k] = ji[k] == 0 ? Rat(static_cast<long>(ji.size()) - 1) : Rat(-1);
        std::vector<Rat> ind = induce_from_normal(g, ji, aug);
        Rat scale = Rat(static_cast<long>(ji.size())) / Rat(g.n); // 1/[J_0:J_i]
        for (int e = 0; e < g.n; ++e)
            per_elem[static_cast<size_t>(e)] += scale * ind[static_cast<size_t>(e)];
    }
    // collapse to classes, checking constancy and integrality
    ClassFunction out;
    out.group = &g;
    out.values.assign(g.classes.size(), Rat(0));
    for (size_t c = 0; c < g.classes.size(); ++c) {
        Rat v = per_elem[static_cast<size_t>(g.classes[c][0])];
        for (int e : g.classes[c])
            if (per_elem[static_cast<size_t>(e)] != v)
                throw Error("ramification character is not a class function");
        if (v.get_den() != 1)
            throw Error("ramification character is not integer-valued");
        out.values[c] = v;
    }
    return out;
}

} // namespace

ClassFunction artin_character(const RamFiltration& f) { return ramification_sum(f, 0); }

ClassFunction swan_character(const RamFiltration& f)
{
    ClassFunction sw = ramification_sum(f, 1);
    // sanity: vanishes off the wild subgroup J_1
    const std::vector<int>& j1 = f.chain.size() > 1 ? f.chain[1] : f.chain.back();
    std::set<int> wild(j1.begin(), j1.end());
    for (int e = 0; e < f.group.n; ++e)
        if (!wild.count(e) && sw.at_element(e) != 0)
            throw Error("Swan character does not vanish off J_1");
    return sw;
}

Rat conductor_pairing(const ClassFunction& f, const std::vector<CycNum>& chi_values)
{
    const FiniteGroup& g = *f.group;
    if (chi_values.size() != static_cast<size_t>(g.n))
        throw Error("character value list has the wrong length");
    int64_t p = chi_values[0].banned_prime();
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            size_t ab = static_cast<size_t>(g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)]);
            if (chi_values[static_cast<size_t>(a)] * chi_values[static_cast<size_t>(b)]
                != chi_values[ab])
                throw Error("character value map is not a homomorphism");
        }
    CycNum acc = CycNum::zero(p);
    for (int e = 0; e < g.n; ++e)
        acc = acc + chi_values[static_cast<size_t>(e)] * f.at_element(e);
    if (!acc.is_rational())
        throw Error("conductor pairing is not rational");
    return acc.to_rational() / Rat(g.n);
}

int64_t AbelianCharacterTable::count() const
{
    int64_t c = 1;
    for (int64_t o : basis_orders)
        c *= o;
    return c;
}

RootOfUnity AbelianCharacterTable::value(int64_t char_index, int element) const
{
    std::vector<int64_t> chi_exps = exponents_of(char_index);
    const std::vector<int64_t>& dl = dlogs[static_cast<size_t>(element)];
    RootOfUnity r = RootOfUnity::one();
    for (size_t i = 0; i < basis_orders.size(); ++i)
        r = r.mul(RootOfUnity::make(basis_orders[i], chi_exps[i] * dl[i]));
    return r;
}

std::vector<CycNum> AbelianCharacterTable::values_of(int64_t char_index, int64_t p) const
{
    std::vector<CycNum> out;
    out.reserve(static_cast<size_t>(group->n));
    for (int e = 0; e < group->n; ++e)
        out.push_back(value(char_index, e).to_cyc(p));
    return out;
}

std::vector<int64_t> AbelianCharacterTable::exponents_of(int64_t char_index) const
{
    std::vector<int64_t> exps(basis_orders.size(), 0);
    for (size_t i = basis_orders.size(); i > 0; --i) {
        exps[i - 1] = char_index % basis_orders[i - 1];
        char_index /= basis_orders[i - 1];
    }
    return exps;
}

AbelianCharacterTable abelian_characters(const FiniteGroup& g)
{
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            if (g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)]
                != g.mul[static_cast<size_t>(b)][static_cast<size_t>(a)])
                throw Error("character table requested for a nonabelian group");
    MulFn mul = [&g](int a, int b) {
        return g.mul[static_cast<size_t>(a)][static_cast<size_t>(b)];
    };
    AbelianBasis basis = abelian_basis(g.n, mul, 0);
    AbelianCharacterTable t;
    t.group = &g;
    t.basis_gens = basis.gens;
    t.basis_orders = basis.orders;
    // dlog of every element by walking the generator box
    t.dlogs.assign(static_cast<size_t>(g.n), {});
    std::vector<char> seen(static_cast<size_t>(g.n), 0);
    std::vector<int64_t> exps(basis.gens.size(), 0);
    int cur = 0;
    int64_t total = 1;
    for (int64_t o : basis.orders)
        total *= o;
    if (total != g.n)
        throw Error("abelian basis does not span the group");
    for (int64_t packed = 0;; ++packed) {
        if (seen[static_cast<size_t>(cur)])
            throw Error("abelian basis is not a direct product");
        seen[static_cast<size_t>(cur)] = 1;
        t.dlogs[static_cast<size_t>(cur)] = exps;
        if (packed + 1 == total)
            break;
        size_t i = exps.size();
        while (true) {
            --i;
            cur = mul(cur, basis.gens[i]);
            if (exps[i] + 1 < basis.orders[i]) {
                ++exps[i];
                break;
            }
            exps[i] = 0;
        }
    }
    return t;
}

CyclotomicFiltration builtin_cyclotomic_filtration(int64_t p, int n)
{
    if (p == 2 || !is_prime(p))
        throw Error("built-in cyclotomic filtrations require an odd prime");
    if (n < 1 || n > 3)
        throw Error("built-in cyclotomic filtrations cover n <= 3");
    int64_t pn = ipow(p, n);
    std::vector<int64_t> residues;
    std::map<int64_t, int> index;
    // order residues so that index 0 is the identity residue 1
    residues.push_back(1);
    for (int64_t r = 2; r < pn; ++r)
        if (r % p != 0)
            residues.push_back(r);
    for (size_t i = 0; i < residues.size(); ++i)
        index[residues[i]] = static_cast<int>(i);
    int sz = static_cast<int>(residues.size());
    std::vector<std::vector<int>> table(static_cast<size_t>(sz),
                                        std::vector<int>(static_cast<size_t>(sz)));
    for (int a = 0; a < sz; ++a)
        for (int b = 0; b < sz; ++b)
            table[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                index.at(residues[static_cast<size_t>(a)] * residues[static_cast<size_t>(b)] % pn);
    FiniteGroup g = FiniteGroup::from_table(std::move(table));
    // J_i = subgroup of residues congruent to 1 mod p^k, where
    // p^{k-1} <= i <= p^k - 1; the chain is listed up to the first trivial step
    std::vector<std::vector<int>> chain;
    chain.push_back([&] {
        std::vector<int> all(static_cast<size_t>(sz));
        for (int i = 0; i < sz; ++i)
            all[static_cast<size_t>(i)] = i;
        return all;
    }());
    int64_t last_i = ipow(p, n - 1);
    for (int64_t i = 1; i <= last_i; ++i) {
        int k = 1;
        while (ipow(p, k) - 1 < i)
            ++k;
        int64_t pk = ipow(p, k);
        std::vector<int> sub;
        for (int e = 0; e < sz; ++e)
            if (residues[static_cast<size_t>(e)] % pk == 1)
                sub.push_back(e);
        chain.push_back(std::move(sub));
    }
    CyclotomicFiltration out;
    out.filtration = RamFiltration::make(std::move(g), std::move(chain));
    out.residues = std::move(residues);
    out.p = p;
    out.n = n;
    return out;
}

QuotientFiltration quotient_filtration(const RamFiltration& f,
                                       const std::vector<int>& kernel)
{
    const FiniteGroup& g = f.group;
    if (!g.is_subgroup(kernel) || !g.is_normal(kernel))
        throw Error("quotient kernel must be a normal subgroup");
    std::set<int> ker(kernel.begin(), kernel.end());
    // cosets by minimum representative
    std::vector<int> coset_rep(static_cast<size_t>(g.n), -1);
    for (int e = 0; e < g.n; ++e) {
        if (coset_rep[static_cast<size_t>(e)] >= 0)
            continue;
        int mn = e;
        std::vector<int> members;
        for (int k : ker)
            members.push_back(g.mul[static_cast<size_t>(e)][static_cast<size_t>(k)]);
        for (int v : members)
            mn = std::min(mn, v);
        for (int v : members)
            coset_rep[static_cast<size_t>(v)] = mn;
    }
    std::vector<int> reps;
    for (int e = 0; e < g.n; ++e)
        if (coset_rep[static_cast<size_t>(e)] == e)
            reps.push_back(e);
    std::sort(reps.begin(), reps.end());
    // identity's coset must come first for element 0 to be the identity
    std::stable_partition(reps.begin(), reps.end(),
                          [&](int r) { return r == coset_rep[0]; });
    std::map<int, int> new_index;
    for (size_t i = 0; i < reps.size(); ++i)
        new_index[reps[i]] = static_cast<int>(i);
    int qn = static_cast<int>(reps.size());
    std::vector<std::vector<int>> table(static_cast<size_t>(qn),
                                        std::vector<int>(static_cast<size_t>(qn)));
    for (int a = 0; a < qn; ++a)
        for (int b = 0; b < qn; ++b)
            table[static_cast<size_t>(a)][static_cast<size_t>(b)] = new_index.at(
                coset_rep[static_cast<size_t>(g.mul[static_cast<size_t>(reps[static_cast<size_t>(a)])]
                                                   [static_cast<size_t>(reps[static_cast<size_t>(b)])])]);
    FiniteGroup q = FiniteGroup::from_table(std::move(table));
    std::vector<std::vector<int>> chain;
    for (const auto& ji : f.chain) {
        std::set<int> img;
        for (int e : ji)
            img.insert(new_index.at(coset_rep[static_cast<size_t>(e)]));
        chain.emplace_back(img.begin(), img.end());
    }
    // drop repeated trailing trivial steps beyond the first
    while (chain.size() >= 2 && chain[chain.size() - 2] == std::vector<int>{0}
           && chain.back() == std::vector<int>{0})
        chain.pop_back();
    QuotientFiltration out;
    out.filtration = RamFiltration::make(std::move(q), std::move(chain));
    out.projection.assign(static_cast<size_t>(g.n), 0);
    for (int e = 0; e < g.n; ++e)
        out.projection[static_cast<size_t>(e)] = new_index.at(coset_rep[static_cast<size_t>(e)]);
    return out;
}

} // namespace eps0
