#include "eps0/numtheory.hpp"

#include <stdexcept>

namespace eps0 {

int64_t gcd64(int64_t a, int64_t b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int64_t lcm64(int64_t a, int64_t b)
{
    if (a == 0 || b == 0)
        return 0;
    int64_t g = gcd64(a, b);
    __int128 r = static_cast<__int128>(a / g) * b;
    if (r > INT64_MAX || r < 0)
        throw std::overflow_error("lcm64 overflow");
    return static_cast<int64_t>(r);
}

int64_t ipow(int64_t b, int e)
{
    if (e < 0)
        throw std::invalid_argument("ipow: negative exponent");
    __int128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > INT64_MAX || r < INT64_MIN)
            throw std::overflow_error("ipow overflow");
    }
    return static_cast<int64_t>(r);
}

int64_t mulmod(int64_t a, int64_t b, int64_t m)
{
    __int128 r = static_cast<__int128>(a) * b % m;
    if (r < 0)
        r += m;
    return static_cast<int64_t>(r);
}

int64_t powmod(int64_t a, int64_t e, int64_t m)
{
    if (m == 1)
        return 0;
    if (e < 0)
        throw std::invalid_argument("powmod: negative exponent");
    a %= m;
    if (a < 0)
        a += m;
    int64_t r = 1;
    while (e > 0) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

int64_t invmod(int64_t a, int64_t m)
{
    int64_t g = m, x = 0, x1 = 1, a0 = a % m;
    if (a0 < 0)
        a0 += m;
    int64_t b = a0;
    // extended Euclid on (m, a)
    while (b != 0) {
        int64_t q = g / b;
        int64_t t = g - q * b;
        g = b;
        b = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1)
        throw std::invalid_argument("invmod: not invertible");
    x %= m;
    if (x < 0)
        x += m;
    return x;
}

bool is_prime(int64_t n)
{
    if (n < 2)
        return false;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    int64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic Miller-Rabin bases, valid for all 64-bit inputs
    for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        int64_t x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n)
{
    if (n <= 0)
        throw std::invalid_argument("factorize: need positive input");
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

int64_t euler_phi(int64_t n)
{
    int64_t r = 1;
    for (auto [p, e] : factorize(n))
        r *= ipow(p, e - 1) * (p - 1);
    return r;
}

int64_t mul_order(int64_t a, int64_t n)
{
    if (n == 1)
        return 1;
    if (gcd64(a, n) != 1)
        throw std::invalid_argument("mul_order: not a unit");
    int64_t ord = euler_phi(n);
    for (auto [q, e] : factorize(ord)) {
        (void)e;
        while (ord % q == 0 && powmod(a, ord / q, n) == 1)
            ord /= q;
    }
    return ord;
}

} // namespace eps0
