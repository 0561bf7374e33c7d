#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace eps0 {

using std::int64_t;
using std::uint64_t;

int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64(int64_t a, int64_t b);

// b^e with overflow check; throws on overflow or e < 0.
int64_t ipow(int64_t b, int e);

int64_t mulmod(int64_t a, int64_t b, int64_t m);
int64_t powmod(int64_t a, int64_t e, int64_t m);
int64_t invmod(int64_t a, int64_t m);

bool is_prime(int64_t n);

// Prime factorization by trial division, ascending primes.
std::vector<std::pair<int64_t, int>> factorize(int64_t n);

int64_t euler_phi(int64_t n);

// Multiplicative order of a modulo n; requires gcd(a, n) = 1.
int64_t mul_order(int64_t a, int64_t n);

// Deterministic PRNG used wherever seeded randomness is needed; results
// must be identical across platforms and runs.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next()
    {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform-ish value in [0, n); n > 0
    uint64_t below(uint64_t n) { return next() % n; }

    int64_t range(int64_t lo, int64_t hi) // inclusive
    {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }
};

} // namespace eps0
