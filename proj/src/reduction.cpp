#include "eps0/reduction.hpp"

#include <algorithm>
#include <sstream>

namespace eps0 {

namespace {

int poly_deg(const std::vector<int64_t>& v)
{
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (v[i] != 0)
            return i;
    return -1;
}

std::vector<int64_t> poly_trim(std::vector<int64_t> v)
{
    v.resize(static_cast<size_t>(poly_deg(v) + 1));
    return v;
}

std::vector<int64_t> poly_mul(const std::vector<int64_t>& a,
                              const std::vector<int64_t>& b, int64_t l)
{
    if (a.empty() || b.empty())
        return {};
    std::vector<int64_t> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + mulmod(a[i], b[j], l)) % l;
    }
    return out;
}

// remainder of a modulo monic-normalized b
std::vector<int64_t> poly_mod(std::vector<int64_t> a, const std::vector<int64_t>& b,
                              int64_t l)
{
    int db = poly_deg(b);
    if (db < 0)
        throw Error("poly_mod: division by zero polynomial");
    int64_t lead_inv = invmod(b[static_cast<size_t>(db)], l);
    for (int i = poly_deg(a); i >= db; --i) {
        int64_t c = mulmod(a[static_cast<size_t>(i)], lead_inv, l);
        if (c == 0)
            continue;
        for (int j = 0; j <= db; ++j) {
            auto& t = a[static_cast<size_t>(i - db + j)];
            t = (t - mulmod(c, b[static_cast<size_t>(j)], l)) % l;
            if (t < 0)
                t += l;
        }
    }
    if (db == 0)
        return {};
    a.resize(static_cast<size_t>(db));
    return poly_trim(std::move(a));
}

std::vector<int64_t> poly_gcd(std::vector<int64_t> a, std::vector<int64_t> b, int64_t l)
{
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (poly_deg(b) >= 0) {
        auto r = poly_mod(a, b, l);
        a = std::move(b);
        b = std::move(r);
    }
    // normalize monic
    int da = poly_deg(a);
    if (da >= 0) {
        int64_t inv_l = invmod(a[static_cast<size_t>(da)], l);
        for (auto& c : a)
            c = mulmod(c, inv_l, l);
    }
    return a;
}

std::vector<int64_t> poly_powmod(std::vector<int64_t> base, Int e,
                                 const std::vector<int64_t>& mod, int64_t l)
{
    std::vector<int64_t> acc = {1};
    base = poly_mod(std::move(base), mod, l);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            acc = poly_mod(poly_mul(acc, base, l), mod, l);
        base = poly_mod(poly_mul(base, base, l), mod, l);
        e >>= 1;
    }
    return acc;
}

// equal-degree splitting of a squarefree monic polynomial whose irreducible
// factors all have degree d; Cantor-Zassenhaus with a fixed-seed generator
std::vector<std::vector<int64_t>> equal_degree_factor(std::vector<int64_t> f, int d,
                                                      int64_t l)
{
    std::vector<std::vector<int64_t>> done;
    std::vector<std::vector<int64_t>> work{poly_trim(std::move(f))};
    SplitMix64 rng(0x5eedc0deULL);
    Int q_d;
    mpz_ui_pow_ui(q_d.get_mpz_t(), static_cast<unsigned long>(l),
                  static_cast<unsigned long>(d));
    while (!work.empty()) {
        std::vector<int64_t> g = std::move(work.back());
        work.pop_back();
        int dg = poly_deg(g);
        if (dg == d) {
            int64_t inv_l = invmod(g[static_cast<size_t>(dg)], l);
            for (auto& c : g)
                c = mulmod(c, inv_l, l);
            done.push_back(std::move(g));
            continue;
        }
        // random splitting element
        std::vector<int64_t> a(static_cast<size_t>(dg), 0);
        for (auto& c : a)
            c = static_cast<int64_t>(rng.below(static_cast<uint64_t>(l)));
        std::vector<int64_t> h;
        if (l == 2) {
            // trace map T(a) = a + a^2 + ... + a^{2^{d-1}}
            std::vector<int64_t> t = poly_mod(a, g, l);
            std::vector<int64_t> acc = t;
            for (int i = 1; i < d; ++i) {
                t = poly_mod(poly_mul(t, t, l), g, l);
                acc.resize(std::max(acc.size(), t.size()), 0);
                for (size_t j = 0; j < t.size(); ++j)
                    acc[j] ^= t[j];
            }
            h = poly_gcd(g, poly_trim(std::move(acc)), l);
        } else {
            Int e = (q_d - 1) / 2;
            std::vector<int64_t> apow = poly_powmod(a, e, g, l);
            if (!apow.empty())
                apow[0] = (apow[0] - 1 + l) % l;
            h = poly_gcd(g, poly_trim(std::move(apow)), l);
        }
        int dh = poly_deg(h);
        if (dh <= 0 || dh == dg) {
            work.push_back(std::move(g)); // unlucky split, retry
            continue;
        }
        std::vector<int64_t> rest = g;
        // rest = g / h exactly
        {
            std::vector<int64_t> quot(static_cast<size_t>(dg - dh + 1), 0);
            std::vector<int64_t> rem = g;
            int64_t inv_lead = invmod(h[static_cast<size_t>(dh)], l);
            for (int i = dg; i >= dh; --i) {
                int64_t c = mulmod(rem[static_cast<size_t>(i)], inv_lead, l);
                quot[static_cast<size_t>(i - dh)] = c;
                if (c == 0)
                    continue;
                for (int j = 0; j <= dh; ++j) {
                    auto& t = rem[static_cast<size_t>(i - dh + j)];
                    t = (t - mulmod(c, h[static_cast<size_t>(j)], l)) % l;
                    if (t < 0)
                        t += l;
                }
            }
            if (poly_deg(rem) >= 0)
                throw Error("equal_degree_factor: non-exact division");
            rest = poly_trim(std::move(quot));
        }
        work.push_back(std::move(h));
        work.push_back(std::move(rest));
    }
    return done;
}

} // namespace

std::vector<std::vector<int64_t>> factor_cyclotomic_mod(int64_t level, int64_t l)
{
    // Phi_level mod l = Phi_{level'}^{phi(level)/phi(level')} with level' the
    // prime-to-l part; the irreducible factors are those of Phi_{level'}
    int64_t level1 = level;
    while (level1 % l == 0)
        level1 /= l;
    const std::vector<Int>& phi_int = cyclotomic_poly(level1);
    std::vector<int64_t> f(phi_int.size());
    for (size_t i = 0; i < phi_int.size(); ++i) {
        f[i] = static_cast<int64_t>(
            mpz_fdiv_ui(phi_int[i].get_mpz_t(), static_cast<unsigned long>(l)));
    }
    if (level1 == 1) // Phi_1 = x - 1
        return {{(l - 1) % l, 1}};
    int d = static_cast<int>(mul_order(l % level1, level1));
    auto factors = equal_degree_factor(std::move(f), d, l);
    std::sort(factors.begin(), factors.end());
    return factors;
}

ReductionMap ReductionMap::make(int64_t level, int64_t p, int64_t l)
{
    if (!is_prime(l))
        throw Error("reduction prime l must be prime");
    if (l == p)
        throw Error("reduction requires l different from the residue characteristic p");
    if (level < 1)
        throw Error("reduction level must be positive");
    ReductionMap r;
    r.level_ = level;
    r.p_ = p;
    r.l_ = l;
    auto factors = factor_cyclotomic_mod(level, l);
    r.modulus_ = factors.front(); // lexicographically smallest, low-degree-first
    r.d_ = poly_deg(r.modulus_);
    return r;
}

bool FinFieldElem::is_zero() const
{
    for (int64_t c : rep)
        if (c != 0)
            return false;
    return true;
}

std::string FinFieldElem::str() const
{
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rep.size(); ++i)
        os << (i ? "," : "") << rep[i];
    os << "]@F_" << l << "^" << d;
    return os.str();
}

FinFieldElem ReductionMap::zero() const
{
    return FinFieldElem{l_, d_, std::vector<int64_t>(static_cast<size_t>(d_), 0)};
}

FinFieldElem ReductionMap::one() const
{
    FinFieldElem e = zero();
    e.rep[0] = 1;
    return e;
}

FinFieldElem ReductionMap::from_rat(const Rat& r) const
{
    Int num = r.get_num();
    Int den = r.get_den();
    int64_t n = static_cast<int64_t>(
        mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(l_)));
    int64_t dmod = static_cast<int64_t>(
        mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(l_)));
    if (dmod == 0)
        throw Error("rational with denominator divisible by l cannot reduce");
    FinFieldElem e = zero();
    e.rep[0] = mulmod(n, invmod(dmod, l_), l_);
    return e;
}

FinFieldElem ReductionMap::zeta_power(int64_t e) const
{
    int64_t k = e % level_;
    if (k < 0)
        k += level_;
    std::vector<int64_t> x(static_cast<size_t>(k) + 1, 0);
    x[static_cast<size_t>(k)] = 1;
    auto red = poly_mod(std::move(x), modulus_, l_);
    red.resize(static_cast<size_t>(d_), 0);
    return FinFieldElem{l_, d_, std::move(red)};
}

FinFieldElem ReductionMap::add(const FinFieldElem& a, const FinFieldElem& b) const
{
    FinFieldElem out = a;
    for (int i = 0; i < d_; ++i)
        out.rep[static_cast<size_t>(i)] =
            (out.rep[static_cast<size_t>(i)] + b.rep[static_cast<size_t>(i)]) % l_;
    return out;
}

FinFieldElem ReductionMap::mul(const FinFieldElem& a, const FinFieldElem& b) const
{
    auto prod = poly_mod(poly_mul(a.rep, b.rep, l_), modulus_, l_);
    prod.resize(static_cast<size_t>(d_), 0);
    return FinFieldElem{l_, d_, std::move(prod)};
}

FinFieldElem ReductionMap::pow(const FinFieldElem& a, int64_t e) const
{
    if (e < 0)
        return pow(inv(a), -e);
    FinFieldElem acc = one();
    FinFieldElem base = a;
    while (e > 0) {
        if (e & 1)
            acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

FinFieldElem ReductionMap::inv(const FinFieldElem& a) const
{
    if (a.is_zero())
        throw Error("inverse of zero in the residue field");
    Int q;
    mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(l_),
                  static_cast<unsigned long>(d_));
    Int e = q - 2;
    FinFieldElem acc = one();
    FinFieldElem base = a;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

FinFieldElem ReductionMap::reduce(const CycNum& a) const
{
    if (a.banned_prime() != p_)
        throw Error("reduction map and value disagree on the banned prime");
    CycNum lifted = a.level() == level_ ? a : a.lifted_to(level_);
    FinFieldElem acc = zero();
    for (size_t i = 0; i < lifted.coeffs().size(); ++i) {
        const Rat& c = lifted.coeffs()[i];
        if (c == 0)
            continue;
        acc = add(acc, mul(from_rat(c), zeta_power(static_cast<int64_t>(i))));
    }
    return acc;
}

int64_t job_level(const MulChar& chi, const AdditiveCharacter& psi,
                  const HaarMeasure& dx)
{
    const LocalFieldSpec field = chi.field();
    if (psi.field() != field)
        throw Error("job_level: chi and psi live on different fields");
    int64_t n_psi = field.kind == FieldKind::padic
                        ? ipow(field.p, static_cast<int>(chi.swan()) + 1)
                        : field.p;
    int64_t level = lcm64(n_psi, chi.unit_value_order());
    level = lcm64(level, chi.pi_value().level());
    level = lcm64(level, dx.vol.level());
    return level;
}

FinFieldElem epsilon0_mod_l(const MulChar& chi, const AdditiveCharacter& psi,
                            const HaarMeasure& dx, const ReductionMap& r)
{
    const LocalFieldSpec field = chi.field();
    if (psi.field() != field)
        throw Error("epsilon0_mod_l: chi and psi live on different fields");
    int64_t needed_level = job_level(chi, psi, dx);
    if (needed_level > r.level() || r.level() % needed_level != 0)
        throw Error("reduction level does not accommodate the job's roots of unity");
    int64_t q = field.q();
    int64_t n = psi.level();
    int64_t sw = chi.swan();
    int64_t vg = sw + n + 1;
    int M = std::max(chi.conductor(), 1);
    const QuotRing& ring = QuotRing::get(field, M);

    int64_t level = r.level();
    std::vector<int64_t> hist(static_cast<size_t>(level), 0);
    ring.for_each_unit([&](const RElem& u) {
        RootOfUnity cv = chi.unit_value_rou(u);
        KElement x{field, -vg, u};
        RootOfUnity pv = psi.eval_rou(x);
        int64_t e = (level / cv.order) * ((cv.order - cv.exp) % cv.order)
            + (level / pv.order) * pv.exp;
        hist[static_cast<size_t>(e % level)] += 1;
    });
    // sum_e hist[e] * zeta^e evaluated in F_{l^d} via Horner on descending e
    FinFieldElem acc = r.zero();
    FinFieldElem zeta = r.zeta_power(1);
    for (int64_t e = level - 1; e >= 0; --e) {
        acc = r.mul(acc, zeta);
        if (hist[static_cast<size_t>(e)] != 0) {
            FinFieldElem cnt = r.from_rat(Rat(hist[static_cast<size_t>(e)]));
            acc = r.add(acc, cnt);
        }
    }
    acc = r.mul(acc, r.pow(r.reduce(chi.pi_value()), vg));
    Rat qpow = vg - M >= 0 ? Rat(Int(ipow(q, static_cast<int>(vg - M))))
                           : Rat(1) / Rat(Int(ipow(q, static_cast<int>(M - vg))));
    acc = r.mul(acc, r.from_rat(qpow));
    acc = r.mul(acc, r.reduce(dx.vol));
    if (acc.is_zero())
        throw TheoremViolation("epsilon0_mod_l: computed value is zero");
    return acc;
}

} // namespace eps0
