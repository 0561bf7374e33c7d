#include <doctest.h>

#include <array>
#include <map>

#include "eps0/localfield.hpp"
#include "eps0/swan.hpp"

using namespace eps0;

namespace {

// S_3 with elements 0 = e, 1 = (123), 2 = (132), 3 = (12), 4 = (13), 5 = (23)
std::vector<std::vector<int>> s3_table()
{
    auto compose = [](const std::array<int, 3>& a, const std::array<int, 3>& b) {
        std::array<int, 3> c{};
        for (int i = 0; i < 3; ++i)
            c[static_cast<size_t>(i)] = a[static_cast<size_t>(b[static_cast<size_t>(i)])];
        return c;
    };
    std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1},
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            auto c = compose(perms[static_cast<size_t>(a)], perms[static_cast<size_t>(b)]);
            for (int k = 0; k < 6; ++k)
                if (perms[static_cast<size_t>(k)] == c)
                    t[static_cast<size_t>(a)][static_cast<size_t>(b)] = k;
        }
    return t;
}

} // namespace

TEST_SUITE_BEGIN("swan");

TEST_CASE("group validation")
{
    auto t = s3_table();
    FiniteGroup g = FiniteGroup::from_table(t);
    CHECK(g.n == 6);
    CHECK(g.classes.size() == 3);
    // breaking associativity is caught
    auto broken = t;
    broken[1][1] = 1;
    CHECK_THROWS_AS(FiniteGroup::from_table(broken), Error);
}

TEST_CASE("tame C_2: Artin character is the augmentation")
{
    CyclotomicFiltration cf = builtin_cyclotomic_filtration(3, 1);
    const FiniteGroup& g = cf.filtration.group;
    CHECK(g.n == 2);
    ClassFunction a = artin_character(cf.filtration);
    CHECK(a.at_element(0) == Rat(1));
    CHECK(a.at_element(1) == Rat(-1));
    ClassFunction sw = swan_character(cf.filtration);
    CHECK(sw.at_element(0) == Rat(0));
    CHECK(sw.at_element(1) == Rat(0));
}

TEST_CASE("cyclotomic C_6 filtration for p = 3, n = 2")
{
    CyclotomicFiltration cf = builtin_cyclotomic_filtration(3, 2);
    const RamFiltration& f = cf.filtration;
    CHECK(f.group.n == 6);
    REQUIRE(f.chain.size() == 4); // J_0, J_1 = J_2 = C_3, J_3 = 1
    CHECK(f.chain[1].size() == 3);
    CHECK(f.chain[2] == f.chain[1]);
    CHECK(f.chain[3] == std::vector<int>{0});

    ClassFunction a = artin_character(f);
    ClassFunction sw = swan_character(f);
    // frozen values: a(1) = 9, a = -3 on C_3 \ 1, a = -1 off C_3
    CHECK(a.at_element(0) == Rat(9));
    for (int e = 1; e < 6; ++e) {
        bool in_c3 = false;
        for (int x : f.chain[1])
            if (x == e)
                in_c3 = true;
        CHECK(a.at_element(e) == (in_c3 ? Rat(-3) : Rat(-1)));
        CHECK(sw.at_element(e) == (in_c3 ? Rat(-2) : Rat(0)));
    }
    CHECK(sw.at_element(0) == Rat(4));
}

TEST_CASE("conductor pairings for the C_6 example")
{
    CyclotomicFiltration cf = builtin_cyclotomic_filtration(3, 2);
    ClassFunction a = artin_character(cf.filtration);
    ClassFunction sw = swan_character(cf.filtration);
    AbelianCharacterTable table = abelian_characters(cf.filtration.group);
    REQUIRE(table.count() == 6);
    // trivial character pairs to zero
    CHECK(conductor_pairing(a, table.values_of(0, 3)) == Rat(0));
    CHECK(conductor_pairing(sw, table.values_of(0, 3)) == Rat(0));
    int seen_faithful = 0, seen_quadratic = 0;
    for (int64_t ci = 0; ci < table.count(); ++ci) {
        std::vector<CycNum> values = table.values_of(ci, 3);
        // order of the character = lcm of value orders
        int64_t order = 1;
        for (int e = 0; e < 6; ++e)
            order = lcm64(order, table.value(ci, e).order);
        Rat ap = conductor_pairing(a, values);
        Rat sp = conductor_pairing(sw, values);
        if (order == 6 || order == 3) {
            CHECK(ap == Rat(2));
            CHECK(sp == Rat(1));
            ++seen_faithful;
        } else if (order == 2) {
            CHECK(ap == Rat(1));
            CHECK(sp == Rat(0));
            ++seen_quadratic;
        }
    }
    CHECK(seen_faithful == 4);
    CHECK(seen_quadratic == 1);
}

TEST_CASE("trivial filtration has zero Artin character")
{
    FiniteGroup g = FiniteGroup::from_table({{0}});
    RamFiltration f = RamFiltration::make(std::move(g), {{0}});
    ClassFunction a = artin_character(f);
    CHECK(a.at_element(0) == Rat(0));
    CHECK(swan_character(f).at_element(0) == Rat(0));
}

TEST_CASE("deeper cyclotomic filtration: conductors up to 3")
{
    // Gal(Q_3(zeta_27)/Q_3): every character's Artin/Swan pairing must equal
    // the conductor/Swan exponent of the matching character of Q_3^x
    CyclotomicFiltration cf = builtin_cyclotomic_filtration(3, 3);
    const RamFiltration& filt = cf.filtration;
    CHECK(filt.group.n == 18);
    ClassFunction artin = artin_character(filt);
    ClassFunction swan = swan_character(filt);
    AbelianCharacterTable table = abelian_characters(filt.group);
    LocalFieldSpec field{FieldKind::padic, 3, 1};
    const UnitGroup& ug = UnitGroup::get(QuotRing::get(field, 3));
    std::map<int64_t, int> residue_index;
    for (size_t e = 0; e < cf.residues.size(); ++e)
        residue_index[cf.residues[e]] = static_cast<int>(e);
    bool saw_cond3 = false;
    for (int64_t ci = 0; ci < table.count(); ++ci) {
        std::vector<CycNum> values = table.values_of(ci, 3);
        Rat ap = conductor_pairing(artin, values);
        Rat sp = conductor_pairing(swan, values);
        std::vector<RootOfUnity> vals;
        for (const RElem& g : ug.gens)
            vals.push_back(table.value(ci, residue_index.at(g.c[0])));
        MulChar chi = MulChar::from_gen_values(field, 3, CycNum::one(3), std::move(vals));
        CHECK(Rat(static_cast<long>(chi.conductor())) == ap);
        CHECK(Rat(static_cast<long>(chi.swan())) == sp);
        if (chi.conductor() == 3)
            saw_cond3 = true;
    }
    CHECK(saw_cond3);
}

TEST_CASE("nonabelian S_3 filtration with a wild C_3 layer")
{
    FiniteGroup g = FiniteGroup::from_table(s3_table());
    std::vector<int> all = {0, 1, 2, 3, 4, 5};
    std::vector<int> c3 = {0, 1, 2};
    RamFiltration f = RamFiltration::make(std::move(g), {all, c3, {0}});
    ClassFunction a = artin_character(f);
    // frozen by hand: a(e) = 7, a = -2 on 3-cycles, a = -1 on transpositions
    CHECK(a.at_element(0) == Rat(7));
    CHECK(a.at_element(1) == Rat(-2));
    CHECK(a.at_element(3) == Rat(-1));
    ClassFunction sw = swan_character(f);
    CHECK(sw.at_element(0) == Rat(2));
    CHECK(sw.at_element(1) == Rat(-1));
    CHECK(sw.at_element(3) == Rat(0));
    // sign character: <a, sgn> = 1, <Sw, sgn> = 0
    std::vector<CycNum> sgn;
    for (int e = 0; e < 6; ++e)
        sgn.push_back(e < 3 ? CycNum::one(3) : -CycNum::one(3));
    CHECK(conductor_pairing(a, sgn) == Rat(1));
    CHECK(conductor_pairing(sw, sgn) == Rat(0));
    // the 2-dimensional irreducible pairs to conductor 3, Swan 1; its values
    // (2, -1, 0) are rational, so the pairing is a direct rational sum
    Rat a2 = (a.at_element(0) * 2 + a.at_element(1) * Rat(-1) * 2) / Rat(6);
    Rat sw2 = (sw.at_element(0) * 2 + sw.at_element(1) * Rat(-1) * 2) / Rat(6);
    CHECK(a2 == Rat(3));
    CHECK(sw2 == Rat(1));
}

TEST_CASE("non-normal chain members are rejected")
{
    FiniteGroup g = FiniteGroup::from_table(s3_table());
    std::vector<int> all = {0, 1, 2, 3, 4, 5};
    std::vector<int> c2 = {0, 3}; // <(12)> is not normal in S_3
    CHECK_THROWS_AS(RamFiltration::make(std::move(g), {all, c2, {0}}), Error);
}

TEST_CASE("pairing rejects non-homomorphisms")
{
    CyclotomicFiltration cf = builtin_cyclotomic_filtration(3, 1);
    ClassFunction a = artin_character(cf.filtration);
    std::vector<CycNum> bad = {CycNum::one(3), CycNum::from_rat(Rat(2), 3)};
    CHECK_THROWS_AS(conductor_pairing(a, bad), Error);
}

TEST_CASE("quotient filtration collapses the wild layer")
{
    CyclotomicFiltration cf = builtin_cyclotomic_filtration(5, 2);
    const RamFiltration& f = cf.filtration;
    QuotientFiltration qf = quotient_filtration(f, f.chain[1]);
    CHECK(qf.filtration.group.n == 4); // (Z/5)^x
    ClassFunction sw_quot = swan_character(qf.filtration);
    for (size_t c = 0; c < sw_quot.values.size(); ++c)
        CHECK(sw_quot.values[c] == Rat(0)); // tame quotient
    // inflation compatibility for every character of the quotient
    ClassFunction sw_full = swan_character(f);
    AbelianCharacterTable qt = abelian_characters(qf.filtration.group);
    for (int64_t ci = 0; ci < qt.count(); ++ci) {
        std::vector<CycNum> qvals = qt.values_of(ci, 5);
        std::vector<CycNum> inflated;
        for (int e = 0; e < f.group.n; ++e)
            inflated.push_back(qvals[static_cast<size_t>(qf.projection[static_cast<size_t>(e)])]);
        CHECK(conductor_pairing(sw_full, inflated)
              == conductor_pairing(sw_quot, qvals));
    }
}

TEST_SUITE_END();
