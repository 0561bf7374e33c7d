#include <doctest.h>

#include "eps0/reduction.hpp"
#include "eps0/verify.hpp"

using namespace eps0;

namespace {
const LocalFieldSpec Q3{FieldKind::padic, 3, 1};
} // namespace

TEST_SUITE_BEGIN("reduction");

TEST_CASE("factoring Phi_3 over small primes")
{
    // 7 = 1 mod 3: two linear factors x+3 and x+5 (roots 4 and 2); the
    // lexicographically smaller coefficient vector [3,1] wins
    auto f7 = factor_cyclotomic_mod(3, 7);
    REQUIRE(f7.size() == 2);
    CHECK(f7[0] == std::vector<int64_t>{3, 1});
    CHECK(f7[1] == std::vector<int64_t>{5, 1});
    // 2 has order 2 mod 3: Phi_3 stays irreducible
    auto f2 = factor_cyclotomic_mod(3, 2);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0] == std::vector<int64_t>{1, 1, 1});
}

TEST_CASE("reduction maps evaluate the chosen root")
{
    ReductionMap r = ReductionMap::make(3, 3, 7);
    CHECK(r.d() == 1);
    // zeta_3 maps to the root of x + 3, i.e. 4
    CHECK(r.zeta_power(1).rep == std::vector<int64_t>{4});
    CycNum a = CycNum::one(3) + CycNum::root_of_unity(3, 1, 3) * Rat(2);
    CHECK(r.reduce(a).rep == std::vector<int64_t>{(1 + 2 * 4) % 7});
    // the image of zeta_3 has order 3 in F_7^x
    FinFieldElem z = r.zeta_power(1);
    CHECK(r.pow(z, 3) == r.one());
    CHECK_FALSE(r.pow(z, 1) == r.one());
}

TEST_CASE("level-1 and inverse-p behavior")
{
    ReductionMap r = ReductionMap::make(1, 3, 7);
    CHECK(r.reduce(CycNum::one(3)) == r.one());
    // 1/3 maps to the inverse of 3 mod 7 = 5
    CHECK(r.reduce(CycNum::from_rat(Rat(1) / Rat(3), 3)).rep == std::vector<int64_t>{5});
    CHECK_THROWS_AS(ReductionMap::make(3, 3, 3), Error); // l = p rejected
}

TEST_CASE("degree matches the order of l in the prime-to-l level")
{
    ReductionMap r32 = ReductionMap::make(3, 3, 2);
    CHECK(r32.d() == 2); // ord_3(2) = 2
    ReductionMap r95 = ReductionMap::make(9, 3, 5);
    CHECK(r95.d() == 6); // ord_9(5) = 6
    ReductionMap r12_5 = ReductionMap::make(12, 3, 5);
    CHECK(r12_5.d() == 2); // ord_12(5) = 2
    // l | N: only the prime-to-l part matters
    ReductionMap r12_2 = ReductionMap::make(12, 3, 2);
    CHECK(r12_2.d() == 2); // Phi_12 mod 2 = Phi_3^2
}

TEST_CASE("reduction is a ring homomorphism")
{
    ReductionMap r = ReductionMap::make(12, 3, 7);
    SplitMix64 rng(4);
    for (int i = 0; i < 40; ++i) {
        CycNum a = CycNum::zero(3);
        CycNum b = CycNum::zero(3);
        for (int64_t k = 0; k < euler_phi(12); ++k) {
            a = a + CycNum::root_of_unity(12, k, 3) * Rat(rng.range(-3, 3));
            b = b + CycNum::root_of_unity(12, k, 3) * Rat(rng.range(-3, 3));
        }
        a = a.lifted_to(12);
        b = b.lifted_to(12);
        CHECK(r.reduce(a * b) == r.mul(r.reduce(a), r.reduce(b)));
        CHECK(r.reduce(a + b) == r.add(r.reduce(a), r.reduce(b)));
    }
}

TEST_CASE("epsilon mod l commutes with reduction")
{
    AddChar psi = AddChar::standard(Q3);
    HaarMeasure dx(CycNum::one(3));
    for (int cond = 0; cond <= 2; ++cond) {
        std::vector<int64_t> exps;
        if (cond >= 1) {
            const UnitGroup& ug = UnitGroup::get(QuotRing::get(Q3, cond));
            exps.assign(ug.orders.size(), 0);
            exps[0] = 1;
        }
        MulChar chi = MulChar::from_exponents(Q3, cond, CycNum::one(3), exps);
        CycNum char0 = epsilon0_char(chi, psi, dx).value;
        int64_t level = job_level(chi, psi, dx);
        for (int64_t l : {2, 5, 7, 11, 13}) {
            ReductionMap r = ReductionMap::make(level, 3, l);
            FinFieldElem direct = epsilon0_mod_l(chi, psi, dx, r);
            CHECK(direct == r.reduce(char0));
            CHECK_FALSE(direct.is_zero());
        }
    }
}

TEST_CASE("trivial character reduces to -1")
{
    AddChar psi = AddChar::standard(Q3);
    HaarMeasure dx(CycNum::one(3));
    MulChar chi = MulChar::trivial(Q3);
    ReductionMap r = ReductionMap::make(job_level(chi, psi, dx), 3, 7);
    FinFieldElem v = epsilon0_mod_l(chi, psi, dx, r);
    CHECK(v.rep == std::vector<int64_t>{6});
}

TEST_SUITE_END();
