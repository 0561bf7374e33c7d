#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "eps0/numtheory.hpp"

namespace eps0 {

/// Basis of a finite abelian group given by an opaque multiplication law on
/// element indices 0..n-1. `gens` and `orders` describe a direct-product
/// decomposition G = prod <gens[i]> with |<gens[i]>| = orders[i] and
/// orders[i+1] | orders[i] (invariant factors, largest first).
struct AbelianBasis {
    std::vector<int> gens;
    std::vector<int64_t> orders;
};

using MulFn = std::function<int(int, int)>;

AbelianBasis abelian_basis(int n, const MulFn& mul, int identity);

int group_pow(const MulFn& mul, int identity, int x, int64_t e);

int64_t element_order(const MulFn& mul, int identity, int x);

// order of x given a multiple n of it (e.g. the group order); O(log) powerings
int64_t element_order_dividing(const MulFn& mul, int identity, int x, int64_t n);

} // namespace eps0
