#include <doctest.h>

#include "eps0/cyclotomic.hpp"

using namespace eps0;

namespace {

// brute-force norm through the full conjugate product, kept independent of
// the resultant path it checks
Rat conjugate_product_norm(const CycNum& a)
{
    CycNum prod = CycNum::one(a.banned_prime());
    for (int64_t k = 1; k <= a.level(); ++k) {
        if (gcd64(k, a.level()) != 1)
            continue;
        prod = prod * a.galois(k);
    }
    return prod.to_rational();
}

CycNum z(int64_t order, int64_t e, int64_t p = 3)
{
    return CycNum::root_of_unity(order, e, p);
}

} // namespace

TEST_SUITE_BEGIN("cyclotomic");

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclotomic_poly(1) == std::vector<Int>{-1, 1});
    CHECK(cyclotomic_poly(2) == std::vector<Int>{1, 1});
    CHECK(cyclotomic_poly(3) == std::vector<Int>{1, 1, 1});
    CHECK(cyclotomic_poly(4) == std::vector<Int>{1, 0, 1});
    CHECK(cyclotomic_poly(9) == std::vector<Int>{1, 0, 0, 1, 0, 0, 1});
    CHECK(cyclotomic_poly(12) == std::vector<Int>{1, 0, -1, 0, 1});
}

TEST_CASE("zeta3 relation and products")
{
    CHECK(z(3, 1) + z(3, 2) == -CycNum::one(3));
    // (1 + 2 zeta)(1 + 2 zeta^2) = 3, expanded by hand against Phi_3
    CycNum a = CycNum::one(3) + z(3, 1) * Rat(2);
    CycNum b = CycNum::one(3) + z(3, 2) * Rat(2);
    CHECK(a * b == CycNum::from_rat(Rat(3), 3));
    CHECK(a * CycNum::one(3) == a);
}

TEST_CASE("root_of_unity normalizations")
{
    CHECK(z(3, 3) == CycNum::one(3));
    CHECK(z(4, 2) == -CycNum::one(3));
    CHECK(z(9, 3) == z(3, 1)); // level harmonization identifies zeta_9^3 with zeta_3
    CHECK(z(5, -1, 7) == z(5, 4, 7));
}

TEST_CASE("norm values")
{
    CycNum a = CycNum::one(3) + z(3, 1) * Rat(2);
    CHECK(a.norm() == Rat(3));
    CHECK(CycNum::one(3).norm() == Rat(1));
    CHECK(z(3, 1).norm() == Rat(1));
    CHECK(z(4, 1).norm() == Rat(1));
    CHECK(z(8, 3, 3).norm() == Rat(1));
    CHECK(CycNum::from_rat(Rat(2), 3).norm() == Rat(2));
    // norm at the stored level: rationals pick up phi(N) conjugates
    CHECK(CycNum::from_rat(Rat(2), 3).lifted_to(3).norm() == Rat(4));
}

TEST_CASE("norm agrees with the conjugate product")
{
    SplitMix64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        int64_t levels[] = {1, 3, 4, 5, 8, 9, 12, 36};
        int64_t n = levels[rng.below(8)];
        int64_t p = trial % 2 ? 3 : 5;
        CycNum a = CycNum::zero(p);
        for (int64_t k = 0; k < euler_phi(n); ++k) {
            int64_t c = rng.range(-3, 3);
            if (c != 0)
                a = a + z(n, k, p) * Rat(c);
        }
        a = a.lifted_to(n);
        if (a.is_zero())
            continue;
        CHECK(a.norm() == conjugate_product_norm(a));
    }
}

TEST_CASE("norm multiplicativity on random pairs")
{
    SplitMix64 rng(1234);
    int64_t levels[] = {3, 4, 9, 12, 36};
    for (int trial = 0; trial < 200; ++trial) {
        int64_t n = levels[rng.below(5)];
        CycNum a = CycNum::zero(3);
        CycNum b = CycNum::zero(3);
        for (int64_t k = 0; k < euler_phi(n); ++k) {
            a = a + z(n, k) * Rat(rng.range(-2, 2));
            b = b + z(n, k) * Rat(rng.range(-2, 2));
        }
        a = a.lifted_to(n);
        b = b.lifted_to(n);
        CHECK(Rat((a * b).lifted_to(n).norm()) == a.norm() * b.norm());
    }
}

TEST_CASE("unit detection")
{
    int64_t p = 3;
    CycNum a = CycNum::one(p) + z(3, 1) * Rat(2); // norm 3
    CHECK(a.is_unit());
    CHECK_FALSE(CycNum::from_rat(Rat(2), p).is_unit());
    CHECK_FALSE(CycNum::zero(p).is_unit());
    CHECK(CycNum::from_rat(Rat(1) / Rat(9), p).is_unit());
    CHECK(z(8, 5, p).is_unit());
    CHECK((CycNum::from_rat(Rat(2), 2)).is_unit()); // 2 is a unit of Z[1/2]
}

TEST_CASE("unit product stays a unit")
{
    SplitMix64 rng(777);
    std::vector<CycNum> units;
    units.push_back(CycNum::one(3) + z(3, 1) * Rat(2));
    units.push_back(z(9, 2));
    units.push_back(CycNum::from_rat(Rat(1) / Rat(3), 3));
    units.push_back(-CycNum::one(3));
    for (int i = 0; i < 20; ++i) {
        const CycNum& a = units[rng.below(units.size())];
        const CycNum& b = units[rng.below(units.size())];
        CHECK((a * b).is_unit());
    }
}

TEST_CASE("inverse of units")
{
    CycNum a = CycNum::one(3) + z(3, 1) * Rat(2);
    CHECK(a * a.inv() == CycNum::one(3).lifted_to(3));
    CHECK(z(9, 4).inv() == z(9, -4));
    CHECK_THROWS_AS(CycNum::from_rat(Rat(2), 3).inv(), Error);
}

TEST_CASE("denominator invariant")
{
    CHECK_THROWS_AS(CycNum::from_rat(Rat(1) / Rat(2), 3), Error);
    CHECK_NOTHROW(CycNum::from_rat(Rat(5) / Rat(27), 3));
    // closure under arithmetic
    CycNum a = CycNum::from_rat(Rat(1) / Rat(3), 3) + z(3, 1);
    CycNum b = a * a;
    for (const Rat& c : b.coeffs()) {
        Int den = c.get_den();
        while (den % 3 == 0)
            den /= 3;
        CHECK(den == 1);
    }
}

TEST_CASE("mismatched banned primes are rejected")
{
    CHECK_THROWS_AS(CycNum::one(3) + CycNum::one(5), Error);
}

TEST_CASE("galois action and quadratic Gauss sum conjugate")
{
    CycNum g = z(3, 1) - z(3, 2); // the conductor-3 quadratic Gauss sum
    CHECK(g == CycNum::one(3) + z(3, 1) * Rat(2));
    CHECK(g * g.galois(2) == CycNum::from_rat(Rat(3), 3).lifted_to(3));
}

TEST_CASE("histogram construction")
{
    std::vector<Int> counts(9, Int(0));
    counts[3] = 1; // zeta_9^3 = zeta_3
    CHECK(CycNum::from_histogram(9, counts, 3) == z(3, 1));
    std::vector<Int> all(3, Int(1));
    CHECK(CycNum::from_histogram(3, all, 3) == CycNum::zero(3)); // full sum vanishes
}

TEST_SUITE_END();
