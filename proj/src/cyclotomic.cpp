#include "eps0/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace eps0 {

namespace {

constexpr int64_t kMaxLevel = 1 << 20;

std::mutex g_cyc_mutex;
std::map<int64_t, std::vector<Int>> g_cyc_polys;
// x^k mod Phi_N for 0 <= k < 2N, as integer coefficient rows of length phi(N)
std::map<int64_t, std::vector<std::vector<Int>>> g_power_tables;

// exact division of integer polynomials, remainder must vanish
std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den)
{
    std::vector<Int> q(num.size() - den.size() + 1, Int(0));
    for (int64_t i = static_cast<int64_t>(q.size()) - 1; i >= 0; --i) {
        Int c = num[i + den.size() - 1] / den.back();
        q[i] = c;
        for (size_t j = 0; j < den.size(); ++j)
            num[i + j] -= c * den[j];
    }
    for (const Int& c : num)
        if (c != 0)
            throw Error("poly_divide_exact: nonzero remainder");
    return q;
}

const std::vector<Int>& cyclotomic_poly_locked(int64_t n)
{
    auto it = g_cyc_polys.find(n);
    if (it != g_cyc_polys.end())
        return it->second;
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<Int> num(n + 1, Int(0));
    num[0] = -1;
    num[n] = 1;
    for (int64_t d = 1; d < n; ++d) {
        if (n % d == 0)
            num = poly_divide_exact(std::move(num), cyclotomic_poly_locked(d));
    }
    return g_cyc_polys.emplace(n, std::move(num)).first->second;
}

const std::vector<std::vector<Int>>& power_table(int64_t n)
{
    std::lock_guard<std::mutex> lk(g_cyc_mutex);
    auto it = g_power_tables.find(n);
    if (it != g_power_tables.end())
        return it->second;
    const std::vector<Int>& phi_poly = cyclotomic_poly_locked(n);
    size_t deg = phi_poly.size() - 1;
    std::vector<std::vector<Int>> rows;
    rows.reserve(2 * n);
    std::vector<Int> cur(deg, Int(0));
    cur[0] = 1;
    rows.push_back(cur);
    for (int64_t k = 1; k < 2 * n; ++k) {
        Int top = cur[deg - 1];
        for (size_t i = deg - 1; i > 0; --i)
            cur[i] = cur[i - 1] - top * phi_poly[i];
        cur[0] = -top * phi_poly[0];
        rows.push_back(cur);
    }
    return g_power_tables.emplace(n, std::move(rows)).first->second;
}

void check_level(int64_t n)
{
    if (n < 1 || n > kMaxLevel)
        throw Error("cyclotomic level out of range: " + std::to_string(n));
}

void check_prime(int64_t p)
{
    if (!is_prime(p))
        throw Error("banned prime must be prime, got " + std::to_string(p));
}

// reduce a polynomial (any degree < 2N) to the canonical representative
std::vector<Rat> reduce_mod_phi(int64_t n, const std::vector<Rat>& poly)
{
    size_t deg = static_cast<size_t>(euler_phi(n));
    std::vector<Rat> out(deg, Rat(0));
    const auto& table = power_table(n);
    for (size_t k = 0; k < poly.size(); ++k) {
        if (poly[k] == 0)
            continue;
        if (k < deg) {
            out[k] += poly[k];
        } else {
            const auto& row = table[k];
            for (size_t i = 0; i < deg; ++i)
                if (row[i] != 0)
                    out[i] += poly[k] * Rat(row[i]);
        }
    }
    return out;
}

bool denominator_is_p_power(const Rat& r, int64_t p)
{
    Int den = r.get_den();
    while (den % p == 0)
        den /= p;
    return den == 1;
}

// resultant of monic f and g over Z/ell via the Euclidean scheme;
// both passed with true degrees (lc(g) nonzero mod ell is caller's duty)
int64_t resultant_mod(std::vector<int64_t> f, std::vector<int64_t> g, int64_t ell)
{
    auto deg = [](const std::vector<int64_t>& v) -> int64_t {
        for (int64_t i = static_cast<int64_t>(v.size()) - 1; i >= 0; --i)
            if (v[i] != 0)
                return i;
        return -1;
    };
    int64_t res = 1;
    int64_t df = deg(f), dg = deg(g);
    while (true) {
        if (dg < 0)
            return df > 0 ? 0 : res;
        if (dg == 0)
            return mulmod(res, powmod(g[0], df, ell), ell);
        // r = f mod g
        int64_t lg = g[dg];
        int64_t lg_inv = invmod(lg, ell);
        std::vector<int64_t> r = f;
        for (int64_t i = df; i >= dg; --i) {
            int64_t c = mulmod(r[i], lg_inv, ell);
            if (c == 0)
                continue;
            for (int64_t j = 0; j <= dg; ++j) {
                r[i - dg + j] = (r[i - dg + j] - mulmod(c, g[j], ell)) % ell;
                if (r[i - dg + j] < 0)
                    r[i - dg + j] += ell;
            }
        }
        r.resize(dg);
        int64_t dr = deg(r);
        // Res(f, g) = (-1)^{df*dg} lc(g)^{df-dr} Res(g, r)
        int64_t factor = powmod(lg, df - (dr < 0 ? 0 : dr), ell);
        if ((df & 1) && (dg & 1) && factor != 0)
            factor = ell - factor;
        res = mulmod(res, factor, ell);
        f = std::move(g);
        df = dg;
        g = std::move(r);
        dg = dr;
    }
}

// 62-bit primes for CRT, generated deterministically downward from 2^62
const std::vector<int64_t>& crt_primes(size_t count)
{
    static std::mutex m;
    static std::vector<int64_t> primes;
    std::lock_guard<std::mutex> lk(m);
    int64_t candidate = primes.empty() ? ((int64_t(1) << 62) - 1) : primes.back() - 2;
    while (primes.size() < count) {
        while (!is_prime(candidate))
            candidate -= 2;
        primes.push_back(candidate);
        candidate -= 2;
    }
    return primes;
}

} // namespace

const std::vector<Int>& cyclotomic_poly(int64_t n)
{
    check_level(n);
    std::lock_guard<std::mutex> lk(g_cyc_mutex);
    return cyclotomic_poly_locked(n);
}

bool is_signed_p_power(const Rat& r, int64_t p)
{
    if (r == 0)
        return false;
    Int num = r.get_num();
    Int den = r.get_den();
    if (num < 0)
        num = -num;
    while (num % p == 0)
        num /= p;
    while (den % p == 0)
        den /= p;
    return num == 1 && den == 1;
}

CycNum CycNum::from_rat(const Rat& r, int64_t p)
{
    check_prime(p);
    if (!denominator_is_p_power(r, p))
        throw Error("coefficient denominator is not a power of p");
    std::vector<Rat> c(1, r);
    return CycNum(1, p, std::move(c));
}

CycNum CycNum::root_of_unity(int64_t order, int64_t expnt, int64_t p)
{
    check_level(order);
    check_prime(p);
    int64_t e = expnt % order;
    if (e < 0)
        e += order;
    std::vector<Rat> poly(static_cast<size_t>(e) + 1, Rat(0));
    poly[static_cast<size_t>(e)] = 1;
    return CycNum(order, p, reduce_mod_phi(order, poly));
}

CycNum CycNum::from_histogram(int64_t level, const std::vector<Int>& counts, int64_t p)
{
    check_level(level);
    check_prime(p);
    if (counts.size() != static_cast<size_t>(level))
        throw Error("histogram size must equal the level");
    std::vector<Rat> poly(counts.size());
    for (size_t i = 0; i < counts.size(); ++i)
        poly[i] = Rat(counts[i]);
    return CycNum(level, p, reduce_mod_phi(level, poly));
}

CycNum CycNum::from_coeffs(int64_t level, const std::vector<Rat>& coeffs, int64_t p)
{
    check_level(level);
    check_prime(p);
    if (coeffs.size() != static_cast<size_t>(euler_phi(level)))
        throw Error("coefficient vector must have length phi(level)");
    for (const Rat& r : coeffs)
        if (!denominator_is_p_power(r, p))
            throw Error("coefficient denominator is not a power of p");
    return CycNum(level, p, reduce_mod_phi(level, coeffs));
}

CycNum CycNum::lifted_to(int64_t new_level) const
{
    check_level(new_level);
    if (new_level == level_)
        return *this;
    if (new_level % level_ != 0)
        throw Error("can only lift to a multiple of the current level");
    int64_t stride = new_level / level_;
    std::vector<Rat> poly(static_cast<size_t>(new_level), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0)
            poly[i * static_cast<size_t>(stride)] = c_[i];
    return CycNum(new_level, p_, reduce_mod_phi(new_level, poly));
}

void CycNum::check_compatible(const CycNum& a, const CycNum& b)
{
    if (a.p_ != b.p_)
        throw Error("mismatched banned primes: " + std::to_string(a.p_) + " vs "
                    + std::to_string(b.p_));
}

CycNum CycNum::operator-() const
{
    std::vector<Rat> c(c_);
    for (Rat& x : c)
        x = -x;
    return CycNum(level_, p_, std::move(c));
}

CycNum operator+(const CycNum& a, const CycNum& b)
{
    CycNum::check_compatible(a, b);
    int64_t n = lcm64(a.level_, b.level_);
    CycNum x = a.lifted_to(n), y = b.lifted_to(n);
    for (size_t i = 0; i < x.c_.size(); ++i)
        x.c_[i] += y.c_[i];
    return x;
}

CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

CycNum operator*(const CycNum& a, const CycNum& b)
{
    CycNum::check_compatible(a, b);
    int64_t n = lcm64(a.level_, b.level_);
    CycNum x = a.lifted_to(n), y = b.lifted_to(n);
    size_t deg = x.c_.size();
    std::vector<Rat> buf(2 * deg, Rat(0));
    for (size_t i = 0; i < deg; ++i) {
        if (x.c_[i] == 0)
            continue;
        for (size_t j = 0; j < deg; ++j) {
            if (y.c_[j] == 0)
                continue;
            buf[i + j] += x.c_[i] * y.c_[j];
        }
    }
    return CycNum(n, a.p_, reduce_mod_phi(n, buf));
}

CycNum operator*(const CycNum& a, const Rat& r)
{
    std::vector<Rat> c(a.c_);
    for (Rat& x : c)
        x *= r;
    CycNum out(a.level_, a.p_, std::move(c));
    for (const Rat& x : out.c_)
        if (!denominator_is_p_power(x, a.p_))
            throw Error("scalar multiplication left the coefficient ring");
    return out;
}

bool CycNum::operator==(const CycNum& o) const
{
    check_compatible(*this, o);
    int64_t n = lcm64(level_, o.level_);
    return lifted_to(n).c_ == o.lifted_to(n).c_;
}

bool CycNum::is_zero() const
{
    for (const Rat& x : c_)
        if (x != 0)
            return false;
    return true;
}

bool CycNum::is_rational() const
{
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0)
            return false;
    return true;
}

Rat CycNum::to_rational() const
{
    if (!is_rational())
        throw Error("value is not rational: " + str());
    return c_[0];
}

CycNum CycNum::galois(int64_t k) const
{
    int64_t kk = k % level_;
    if (kk < 0)
        kk += level_;
    if (gcd64(kk, level_) != 1)
        throw Error("galois exponent not coprime to the level");
    std::vector<Rat> poly(static_cast<size_t>(level_), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0)
            poly[static_cast<size_t>((static_cast<int64_t>(i) * kk) % level_)] += c_[i];
    return CycNum(level_, p_, reduce_mod_phi(level_, poly));
}

Rat CycNum::norm() const
{
    if (is_zero())
        return Rat(0);
    if (level_ == 1)
        return c_[0];
    // clear denominators: a = A / p^e with integral A
    Int denom = 1;
    for (const Rat& x : c_) {
        Int d = x.get_den();
        Int g;
        mpz_gcd(g.get_mpz_t(), denom.get_mpz_t(), d.get_mpz_t());
        denom = denom / g * d;
    }
    std::vector<Int> a(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        Rat scaled = c_[i] * Rat(denom);
        a[i] = scaled.get_num(); // denominator is 1 after scaling
    }
    while (!a.empty() && a.back() == 0)
        a.pop_back();
    const std::vector<Int>& phi_poly = cyclotomic_poly(level_);
    int64_t deg_phi = static_cast<int64_t>(phi_poly.size()) - 1;
    int64_t deg_a = static_cast<int64_t>(a.size()) - 1;

    // Hadamard-style bound on |Res(Phi, A)| to size the CRT modulus:
    // |Res| <= ||Phi||_2^{deg A} * ||A||_2^{deg Phi}; bound log2 of the norms
    // crudely from coefficient bit sizes.
    auto log2_norm_bound = [](const std::vector<Int>& v) {
        double maxbits = 0;
        for (const Int& c : v)
            if (c != 0)
                maxbits = std::max(
                    maxbits, static_cast<double>(mpz_sizeinbase(c.get_mpz_t(), 2)));
        // ||v||_2 <= sqrt(len) * max|c|
        return maxbits + 0.5 * std::log2(static_cast<double>(v.size())) + 1;
    };
    double log2_bound =
        deg_a * log2_norm_bound(phi_poly) + deg_phi * log2_norm_bound(a) + 2;
    size_t nprimes = static_cast<size_t>(log2_bound / 61.0) + 2;
    const std::vector<int64_t>& primes = crt_primes(nprimes + a.size() + 4);

    Int modulus = 1;
    Int value = 0; // balanced residue accumulated by CRT
    size_t used = 0;
    for (size_t pi = 0; used < nprimes && pi < primes.size(); ++pi) {
        int64_t ell = primes[pi];
        if (mpz_fdiv_ui(a.back().get_mpz_t(), static_cast<unsigned long>(ell)) == 0)
            continue; // degree of A would drop mod ell
        std::vector<int64_t> f(phi_poly.size()), g(a.size());
        for (size_t i = 0; i < phi_poly.size(); ++i)
            f[i] = static_cast<int64_t>(mpz_fdiv_ui(phi_poly[i].get_mpz_t(),
                                                    static_cast<unsigned long>(ell)));
        for (size_t i = 0; i < a.size(); ++i)
            g[i] = static_cast<int64_t>(
                mpz_fdiv_ui(a[i].get_mpz_t(), static_cast<unsigned long>(ell)));
        int64_t r = resultant_mod(f, g, ell);
        // CRT step: value <- value + modulus * t, t = (r - value)/modulus mod ell
        Int vm = value % ell;
        int64_t vmod = static_cast<int64_t>(vm.get_si());
        if (vmod < 0)
            vmod += ell;
        Int mm = modulus % ell;
        int64_t mmod = static_cast<int64_t>(mm.get_si());
        if (mmod < 0)
            mmod += ell;
        int64_t t = mulmod((r - vmod % ell + ell) % ell, invmod(mmod, ell), ell);
        value += modulus * t;
        modulus *= ell;
        // keep the balanced representative
        if (value * 2 > modulus)
            value -= modulus;
        ++used;
    }
    if (used < nprimes)
        throw Error("norm: ran out of CRT primes");
    // Norm(a) = Res(Phi, A) / denom^{phi(N)}
    Int denpow;
    mpz_pow_ui(denpow.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(deg_phi));
    return Rat(value) / Rat(denpow);
}

bool CycNum::is_unit() const
{
    if (is_zero())
        return false;
    return is_signed_p_power(norm(), p_);
}

CycNum CycNum::inv() const
{
    if (!is_unit())
        throw Error("not a unit of Z[1/p][zeta]: " + str());
    Rat nrm = norm();
    CycNum prod = one(p_);
    bool any = false;
    for (int64_t k = 2; k <= level_; ++k) {
        if (gcd64(k, level_) != 1)
            continue;
        prod = any ? prod * galois(k) : galois(k);
        any = true;
    }
    if (!any) // level 1 or 2: empty conjugate product
        prod = one(p_);
    return prod * (Rat(1) / nrm);
}

CycNum CycNum::pow(int64_t e) const
{
    if (e < 0)
        return inv().pow(-e);
    CycNum base = *this;
    CycNum acc = one(p_);
    while (e > 0) {
        if (e & 1)
            acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::string CycNum::str() const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        Rat v = c_[i];
        if (!first)
            os << (v < 0 ? " - " : " + ");
        else if (v < 0)
            os << "-";
        Rat av = v < 0 ? Rat(-v) : v;
        if (i == 0) {
            os << av.get_str();
        } else {
            if (av != 1)
                os << av.get_str() << "*";
            os << "z" << level_;
            if (i > 1)
                os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

} // namespace eps0
