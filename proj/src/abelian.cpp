#include "eps0/abelian.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace eps0 {

int group_pow(const MulFn& mul, int identity, int x, int64_t e)
{
    int acc = identity;
    int base = x;
    while (e > 0) {
        if (e & 1)
            acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

int64_t element_order(const MulFn& mul, int identity, int x)
{
    int64_t n = 1;
    int y = x;
    while (y != identity) {
        y = mul(y, x);
        ++n;
        if (n > (int64_t(1) << 40))
            throw std::runtime_error("element_order: runaway loop");
    }
    return n;
}

int64_t element_order_dividing(const MulFn& mul, int identity, int x, int64_t n)
{
    if (group_pow(mul, identity, x, n) != identity)
        throw std::runtime_error("element_order_dividing: n is not a multiple");
    int64_t ord = n;
    for (auto [q, e] : factorize(n)) {
        (void)e;
        while (ord % q == 0 && group_pow(mul, identity, x, ord / q) == identity)
            ord /= q;
    }
    return ord;
}

namespace {

// order of x restricted to an ell-group: smallest ell^k with x^{ell^k} = id
int64_t pgroup_order(const MulFn& mul, int identity, int x, int64_t ell)
{
    int64_t ord = 1;
    int y = x;
    while (y != identity) {
        y = group_pow(mul, identity, y, ell);
        ord *= ell;
    }
    return ord;
}

// Basis of the abelian ell-group S (element indices, closed under mul).
// Returned with orders descending. Recursion: peel an element of maximal
// order (its span is a direct summand), compute a basis of the quotient,
// and correct the lifts so their orders match their quotient orders.
std::vector<std::pair<int, int64_t>> pgroup_basis(const std::vector<int>& s,
                                                  const MulFn& mul, int identity,
                                                  int64_t ell)
{
    if (s.size() <= 1)
        return {};
    int best = identity;
    int64_t best_ord = 1;
    for (int x : s) {
        int64_t o = pgroup_order(mul, identity, x, ell);
        if (o > best_ord) {
            best_ord = o;
            best = x;
        }
    }
    int64_t e = best_ord; // exponent of S
    if (e == static_cast<int64_t>(s.size()))
        return {{best, e}};

    // coset representatives modulo <best>: minimum index over the orbit
    std::unordered_map<int, int> rep;
    rep.reserve(s.size() * 2);
    for (int y : s) {
        if (rep.count(y))
            continue;
        int mn = y;
        int z = y;
        for (int64_t j = 1; j < e; ++j) {
            z = mul(z, best);
            mn = std::min(mn, z);
        }
        z = y;
        rep[y] = mn;
        for (int64_t j = 1; j < e; ++j) {
            z = mul(z, best);
            rep[z] = mn;
        }
    }
    std::vector<int> quotient;
    {
        std::unordered_set<int> seen;
        for (int y : s) {
            int r = rep.at(y);
            if (seen.insert(r).second)
                quotient.push_back(r);
        }
        std::sort(quotient.begin(), quotient.end());
    }
    MulFn qmul = [&mul, &rep](int a, int b) { return rep.at(mul(a, b)); };
    int qid = rep.at(identity);
    auto sub = pgroup_basis(quotient, qmul, qid, ell);

    std::vector<std::pair<int, int64_t>> out;
    out.emplace_back(best, e);
    for (auto [g, q] : sub) {
        // g^q lies in <best>; the correction below kills it without
        // shrinking the order of the image in the quotient
        int z = group_pow(mul, identity, g, q);
        int64_t sexp = 0;
        int w = identity;
        while (w != z) {
            w = mul(w, best);
            ++sexp;
            if (sexp > e)
                throw std::runtime_error("pgroup_basis: power not in cyclic span");
        }
        if (sexp % q != 0)
            throw std::runtime_error("pgroup_basis: non-liftable relation");
        int64_t j = (e - sexp / q) % e;
        int corrected = mul(g, group_pow(mul, identity, best, j));
        if (pgroup_order(mul, identity, corrected, ell) != q)
            throw std::runtime_error("pgroup_basis: lift has wrong order");
        out.emplace_back(corrected, q);
    }
    return out;
}

} // namespace

AbelianBasis abelian_basis(int n, const MulFn& mul, int identity)
{
    AbelianBasis out;
    if (n <= 1)
        return out;
    auto factors = factorize(n);
    std::vector<std::vector<std::pair<int, int64_t>>> per_prime;
    for (auto [ell, a] : factors) {
        int64_t cofactor = n / ipow(ell, a);
        std::vector<int> sylow;
        {
            std::unordered_set<int> seen;
            for (int x = 0; x < n; ++x) {
                int y = group_pow(mul, identity, x, cofactor);
                if (seen.insert(y).second)
                    sylow.push_back(y);
            }
            std::sort(sylow.begin(), sylow.end());
        }
        auto basis = pgroup_basis(sylow, mul, identity, ell);
        std::sort(basis.begin(), basis.end(),
                  [](const auto& a1, const auto& b1) { return a1.second > b1.second; });
        per_prime.push_back(std::move(basis));
    }
    size_t rank = 0;
    for (const auto& b : per_prime)
        rank = std::max(rank, b.size());
    for (size_t t = 0; t < rank; ++t) {
        int g = identity;
        int64_t ord = 1;
        for (const auto& b : per_prime) {
            if (t < b.size()) {
                g = mul(g, b[t].first);
                ord *= b[t].second;
            }
        }
        out.gens.push_back(g);
        out.orders.push_back(ord);
    }
    return out;
}

} // namespace eps0
