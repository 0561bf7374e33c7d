#include "eps0/localfield.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace eps0 {

namespace {

std::mutex g_intern_mutex;

constexpr int64_t kEnumLimit = int64_t(2) << 20; // enumeration cap, ~2e6

// ---- dense polynomial helpers over Z/p (int64 coefficients) ----

int poly_deg(const std::vector<int64_t>& v)
{
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (v[i] != 0)
            return i;
    return -1;
}

std::vector<int64_t> poly_mulmod_p(const std::vector<int64_t>& a,
                                   const std::vector<int64_t>& b,
                                   const std::vector<int64_t>& mod, int64_t p)
{
    std::vector<int64_t> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    // reduce by monic mod
    int dm = poly_deg(mod);
    for (int i = static_cast<int>(prod.size()) - 1; i >= dm; --i) {
        int64_t c = prod[i];
        if (c == 0)
            continue;
        for (int j = 0; j <= dm; ++j) {
            prod[i - dm + j] = (prod[i - dm + j] - c * mod[j]) % p;
            if (prod[i - dm + j] < 0)
                prod[i - dm + j] += p;
        }
    }
    prod.resize(dm);
    return prod;
}

std::vector<int64_t> poly_powmod_p(std::vector<int64_t> base, int64_t e,
                                   const std::vector<int64_t>& mod, int64_t p)
{
    std::vector<int64_t> acc(poly_deg(mod), 0);
    acc.resize(std::max<size_t>(1, acc.size()));
    acc[0] = 1;
    while (e > 0) {
        if (e & 1)
            acc = poly_mulmod_p(acc, base, mod, p);
        base = poly_mulmod_p(base, base, mod, p);
        e >>= 1;
    }
    return acc;
}

std::vector<int64_t> poly_gcd_p(std::vector<int64_t> a, std::vector<int64_t> b, int64_t p)
{
    while (poly_deg(b) >= 0) {
        int da = poly_deg(a), db = poly_deg(b);
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        int64_t inv_lb = invmod(b[db], p);
        for (int i = da; i >= db; --i) {
            int64_t c = mulmod(a[i], inv_lb, p);
            if (c == 0)
                continue;
            for (int j = 0; j <= db; ++j) {
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p;
                if (a[i - db + j] < 0)
                    a[i - db + j] += p;
            }
        }
        std::swap(a, b);
    }
    return a;
}

bool poly_is_one(const std::vector<int64_t>& v)
{
    return poly_deg(v) == 0;
}

bool is_irreducible(const std::vector<int64_t>& g, int64_t p, int f)
{
    // x^{p^f} == x mod g, and gcd(x^{p^{f/r}} - x, g) = 1 for primes r | f
    std::vector<int64_t> x = {0, 1};
    auto xp = poly_powmod_p(x, ipow(p, f), g, p); // p^f stays within the enumeration cap
    std::vector<int64_t> xv(poly_deg(g), 0);
    xv.resize(std::max<size_t>(2, xv.size()));
    xv[1] = 1;
    xp.resize(xv.size(), 0);
    if (xp != xv)
        return false;
    for (auto [r, e] : factorize(f)) {
        (void)e;
        auto xq = poly_powmod_p(x, ipow(p, f / static_cast<int>(r)), g, p);
        xq.resize(std::max(xq.size(), xv.size()), 0);
        std::vector<int64_t> diff = xq;
        for (size_t i = 0; i < xv.size(); ++i) {
            diff[i] = (diff[i] - xv[i]) % p;
            if (diff[i] < 0)
                diff[i] += p;
        }
        if (!poly_is_one(poly_gcd_p(diff, g, p)))
            return false;
    }
    return true;
}

bool is_primitive(const std::vector<int64_t>& g, int64_t p, int f)
{
    int64_t q1 = ipow(p, f) - 1;
    std::vector<int64_t> x = {0, 1};
    for (auto [r, e] : factorize(q1)) {
        (void)e;
        auto y = poly_powmod_p(x, q1 / r, g, p);
        if (poly_deg(y) == 0 && y[0] == 1)
            return false;
    }
    return true;
}

} // namespace

// ---------------------------------------------------------------- SmallField

SmallField::SmallField(int64_t p_, int f_) : p(p_), f(f_), size(ipow(p_, f_))
{
    if (f == 1) {
        // modulus x - g for the smallest primitive root g mod p
        int64_t g = 1;
        if (p > 2) {
            for (g = 2; g < p; ++g)
                if (mul_order(g, p) == p - 1)
                    break;
        }
        modulus = {(p - g) % p, 1};
        return;
    }
    // first monic primitive polynomial in code order
    for (int64_t code = 0; code < size; ++code) {
        std::vector<int64_t> g(f + 1, 0);
        int64_t c = code;
        for (int i = 0; i < f; ++i) {
            g[i] = c % p;
            c /= p;
        }
        g[f] = 1;
        if (is_irreducible(g, p, f) && is_primitive(g, p, f)) {
            modulus = g;
            return;
        }
    }
    throw Error("no primitive polynomial found (should be unreachable)");
}

const SmallField& SmallField::get(int64_t p, int f)
{
    if (!is_prime(p))
        throw Error("SmallField: p must be prime");
    if (f < 1 || ipow(p, f) > kEnumLimit)
        throw Error("SmallField: size beyond the supported enumeration range");
    static std::map<std::pair<int64_t, int>, std::unique_ptr<SmallField>> cache;
    std::lock_guard<std::mutex> lk(g_intern_mutex);
    auto key = std::make_pair(p, f);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<SmallField>(new SmallField(p, f))).first;
    return *it->second;
}

std::vector<int64_t> SmallField::decode(int64_t code) const
{
    std::vector<int64_t> v(f);
    for (int i = 0; i < f; ++i) {
        v[i] = code % p;
        code /= p;
    }
    return v;
}

int64_t SmallField::encode(const std::vector<int64_t>& v) const
{
    int64_t code = 0;
    for (int i = f - 1; i >= 0; --i)
        code = code * p + (i < static_cast<int>(v.size()) ? v[i] : 0);
    return code;
}

int64_t SmallField::add(int64_t a, int64_t b) const
{
    if (f == 1)
        return (a + b) % p;
    auto va = decode(a), vb = decode(b);
    for (int i = 0; i < f; ++i)
        va[i] = (va[i] + vb[i]) % p;
    return encode(va);
}

int64_t SmallField::sub(int64_t a, int64_t b) const { return add(a, neg(b)); }

int64_t SmallField::neg(int64_t a) const
{
    if (f == 1)
        return (p - a) % p;
    auto v = decode(a);
    for (int i = 0; i < f; ++i)
        v[i] = (p - v[i]) % p;
    return encode(v);
}

int64_t SmallField::mul(int64_t a, int64_t b) const
{
    if (f == 1)
        return mulmod(a, b, p);
    if (a == 0 || b == 0)
        return 0;
    auto prod = poly_mulmod_p(decode(a), decode(b), modulus, p);
    return encode(prod);
}

int64_t SmallField::pow(int64_t a, int64_t e) const
{
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    int64_t acc = 1;
    while (e > 0) {
        if (e & 1)
            acc = mul(acc, a);
        a = mul(a, a);
        e >>= 1;
    }
    return acc;
}

int64_t SmallField::inv(int64_t a) const
{
    if (a == 0)
        throw Error("SmallField: inverse of zero");
    return pow(a, size - 2);
}

int64_t SmallField::frob(int64_t a, int iters) const
{
    int64_t r = a;
    int k = ((iters % f) + f) % f;
    for (int i = 0; i < k; ++i)
        r = pow(r, p);
    return r;
}

int64_t SmallField::trace_to_prime(int64_t a) const
{
    int64_t s = a;
    int64_t x = a;
    for (int i = 1; i < f; ++i) {
        x = pow(x, p);
        s = add(s, x);
    }
    // the trace lies in the prime field: code in [0, p)
    if (s >= p)
        throw Error("trace_to_prime: result outside the prime field");
    return s;
}

// ---------------------------------------------------------------- SubfieldMap

const SubfieldMap& SubfieldMap::get(const SmallField& sub, const SmallField& big)
{
    if (sub.p != big.p || big.f % sub.f != 0)
        throw Error("SubfieldMap: not a subfield pair");
    static std::map<std::pair<const SmallField*, const SmallField*>,
                    std::unique_ptr<SubfieldMap>>
        cache;
    std::lock_guard<std::mutex> lk(g_intern_mutex);
    auto key = std::make_pair(&sub, &big);
    auto it = cache.find(key);
    if (it != cache.end())
        return *it->second;

    auto map = std::unique_ptr<SubfieldMap>(new SubfieldMap());
    map->sub = &sub;
    map->big = &big;
    // smallest-code root of the subfield modulus inside the big field
    int64_t root = -1;
    for (int64_t cand = 0; cand < big.size; ++cand) {
        int64_t acc = 0;
        for (int i = sub.f; i >= 0; --i)
            acc = big.add(big.mul(acc, cand), sub.modulus[i] % sub.p);
        if (acc == 0) {
            root = cand;
            break;
        }
    }
    if (root < 0)
        throw Error("SubfieldMap: no root found (should be unreachable)");
    map->fwd_.resize(static_cast<size_t>(sub.size));
    for (int64_t code = 0; code < sub.size; ++code) {
        // evaluate the coefficient polynomial of `code` at the root
        int64_t c = code;
        std::vector<int64_t> digits(sub.f);
        for (int i = 0; i < sub.f; ++i) {
            digits[i] = c % sub.p;
            c /= sub.p;
        }
        int64_t acc = 0;
        for (int i = sub.f - 1; i >= 0; --i)
            acc = big.add(big.mul(acc, root), digits[i]);
        map->fwd_[static_cast<size_t>(code)] = acc;
        map->back_[acc] = code;
    }
    return *cache.emplace(key, std::move(map)).first->second;
}

int64_t SubfieldMap::back(int64_t code) const
{
    auto it = back_.find(code);
    if (it == back_.end())
        throw Error("SubfieldMap: element not in the subfield");
    return it->second;
}

// ------------------------------------------------------------ LocalFieldSpec

LocalFieldSpec LocalFieldSpec::unram_ext(int fprime) const
{
    if (fprime < 1)
        throw Error("unramified extension degree must be >= 1");
    return LocalFieldSpec{kind, p, f * fprime};
}

std::string LocalFieldSpec::str() const
{
    std::ostringstream os;
    os << (kind == FieldKind::padic ? "padic" : "laurent") << ":p=" << p << ",f=" << f;
    return os.str();
}

LocalFieldSpec LocalFieldSpec::parse(const std::string& descriptor)
{
    auto colon = descriptor.find(':');
    if (colon == std::string::npos)
        throw Error("field descriptor must look like \"padic:p=3,f=1\", got \""
                    + descriptor + "\"");
    std::string kind_str = descriptor.substr(0, colon);
    FieldKind kind;
    if (kind_str == "padic")
        kind = FieldKind::padic;
    else if (kind_str == "laurent")
        kind = FieldKind::laurent;
    else
        throw Error("unknown field kind \"" + kind_str + "\"");
    int64_t p = -1;
    int f = -1;
    std::string rest = descriptor.substr(colon + 1);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw Error("bad field parameter \"" + tok + "\"");
        std::string key = tok.substr(0, eq);
        int64_t val = 0;
        try {
            val = std::stoll(tok.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error("bad numeric value in field parameter \"" + tok + "\"");
        }
        if (key == "p")
            p = val;
        else if (key == "f")
            f = static_cast<int>(val);
        else
            throw Error("unknown field parameter \"" + key + "\"");
    }
    if (p < 2 || !is_prime(p))
        throw Error("field parameter p must be prime");
    if (f < 1 || f > 12)
        throw Error("field parameter f out of range");
    return LocalFieldSpec{kind, p, f};
}

// ------------------------------------------------------------------ QuotRing

namespace {

// padic coefficient-vector arithmetic mod (modulus, p^m)
std::vector<int64_t> gr_mul(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                            const std::vector<int64_t>& mod, int64_t pm)
{
    size_t f = a.size();
    if (f == 1)
        return {mulmod(a[0], b[0], pm)};
    std::vector<int64_t> prod(2 * f - 1, 0);
    for (size_t i = 0; i < f; ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j < f; ++j)
            prod[i + j] = static_cast<int64_t>(
                (static_cast<__int128>(a[i]) * b[j] + prod[i + j]) % pm);
    }
    for (size_t i = prod.size() - 1; i >= f; --i) {
        int64_t c = prod[i];
        if (c == 0)
            continue;
        prod[i] = 0;
        for (size_t j = 0; j < f; ++j) {
            __int128 t = prod[i - f + j] - static_cast<__int128>(c) * mod[j];
            t %= pm;
            if (t < 0)
                t += pm;
            prod[i - f + j] = static_cast<int64_t>(t);
        }
    }
    prod.resize(f);
    return prod;
}

} // namespace

const QuotRing& QuotRing::get(const LocalFieldSpec& spec, int m)
{
    if (m < 1 || m > 64)
        throw Error("quotient precision m out of range");
    static std::map<std::string, std::unique_ptr<QuotRing>> cache;
    std::string key = spec.str() + "^" + std::to_string(m);
    {
        std::lock_guard<std::mutex> lk(g_intern_mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return *it->second;
    }
    auto ring = std::unique_ptr<QuotRing>(new QuotRing());
    ring->spec = spec;
    ring->m = m;
    ring->residue_field = &SmallField::get(spec.p, spec.f);
    if (spec.kind == FieldKind::padic) {
        ring->pm = ipow(spec.p, m);
        if (spec.f > 1) {
            ring->modulus.assign(ring->residue_field->modulus.begin(),
                                 ring->residue_field->modulus.end());
            // Frobenius image of the generator: the root of the modulus that
            // reduces to xi^p, obtained by Newton iteration from xi^p
            std::vector<int64_t> x(spec.f, 0);
            if (spec.f >= 2)
                x[1] = 1;
            QuotRing& r = *ring;
            auto eval_poly = [&](const std::vector<int64_t>& coeffs, const RElem& at) {
                RElem acc = r.zero();
                for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
                    acc = r.add(r.mul(acc, at), r.from_int(coeffs[i]));
                return acc;
            };
            std::vector<int64_t> deriv(spec.f, 0);
            for (int i = 1; i <= spec.f; ++i)
                deriv[i - 1] = (i % ring->pm) * ring->modulus[i] % ring->pm;
            RElem gen = r.make(x);
            RElem root = r.pow(gen, spec.p);
            for (int iter = 0; iter < 2 * m + 4; ++iter) {
                RElem h = eval_poly(ring->modulus, root);
                if (r.is_zero(h))
                    break;
                RElem hp = eval_poly(deriv, root);
                root = r.sub(root, r.mul(h, r.inv(hp)));
            }
            if (!ring->is_zero(eval_poly(ring->modulus, root)))
                throw Error("Frobenius lift did not converge");
            ring->frob_gen = root.c;
        }
    } else {
        ring->coeff_field = ring->residue_field;
    }
    std::lock_guard<std::mutex> lk(g_intern_mutex);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::move(ring)).first;
    return *it->second;
}

int64_t QuotRing::card() const
{
    __int128 c = 1;
    for (int i = 0; i < m * spec.f; ++i) {
        c *= spec.p;
        if (c > (int64_t(1) << 62))
            throw Error("quotient ring too large to enumerate");
    }
    return static_cast<int64_t>(c);
}

int64_t QuotRing::unit_count() const
{
    int64_t q = spec.q();
    return card() / q * (q - 1);
}

RElem QuotRing::zero() const
{
    return RElem{this, std::vector<int64_t>(
                           spec.kind == FieldKind::padic ? spec.f : m, 0)};
}

RElem QuotRing::one() const { return from_int(1); }

RElem QuotRing::from_int(int64_t n) const
{
    RElem z = zero();
    if (spec.kind == FieldKind::padic) {
        int64_t v = n % pm;
        if (v < 0)
            v += pm;
        z.c[0] = v;
    } else {
        int64_t v = n % spec.p;
        if (v < 0)
            v += spec.p;
        z.c[0] = v;
    }
    return z;
}

RElem QuotRing::make(std::vector<int64_t> coeffs) const
{
    size_t want = spec.kind == FieldKind::padic ? static_cast<size_t>(spec.f)
                                                : static_cast<size_t>(m);
    if (coeffs.size() != want)
        throw Error("element coefficient vector has wrong length");
    if (spec.kind == FieldKind::padic) {
        for (int64_t& c : coeffs) {
            c %= pm;
            if (c < 0)
                c += pm;
        }
    } else {
        for (int64_t c : coeffs)
            if (c < 0 || c >= spec.q())
                throw Error("laurent coefficient code out of range");
    }
    return RElem{this, std::move(coeffs)};
}

static void check_ring(const QuotRing* r, const RElem& a)
{
    if (a.ring != r)
        throw Error("ring element used with the wrong quotient ring");
}

RElem QuotRing::add(const RElem& a, const RElem& b) const
{
    check_ring(this, a);
    check_ring(this, b);
    RElem out = a;
    if (spec.kind == FieldKind::padic) {
        for (size_t i = 0; i < out.c.size(); ++i)
            out.c[i] = (out.c[i] + b.c[i]) % pm;
    } else {
        for (size_t i = 0; i < out.c.size(); ++i)
            out.c[i] = coeff_field->add(out.c[i], b.c[i]);
    }
    return out;
}

RElem QuotRing::sub(const RElem& a, const RElem& b) const { return add(a, neg(b)); }

RElem QuotRing::neg(const RElem& a) const
{
    check_ring(this, a);
    RElem out = a;
    if (spec.kind == FieldKind::padic) {
        for (auto& c : out.c)
            c = (pm - c) % pm;
    } else {
        for (auto& c : out.c)
            c = coeff_field->neg(c);
    }
    return out;
}

RElem QuotRing::mul(const RElem& a, const RElem& b) const
{
    check_ring(this, a);
    check_ring(this, b);
    RElem out = zero();
    if (spec.kind == FieldKind::padic) {
        out.c = spec.f == 1 ? std::vector<int64_t>{mulmod(a.c[0], b.c[0], pm)}
                            : gr_mul(a.c, b.c, modulus, pm);
    } else {
        for (int k = 0; k < m; ++k) {
            int64_t s = 0;
            for (int i = 0; i <= k; ++i)
                s = coeff_field->add(s, coeff_field->mul(a.c[i], b.c[k - i]));
            out.c[k] = s;
        }
    }
    return out;
}

bool QuotRing::is_zero(const RElem& a) const
{
    check_ring(this, a);
    for (int64_t c : a.c)
        if (c != 0)
            return false;
    return true;
}

int64_t QuotRing::residue_code(const RElem& a) const
{
    check_ring(this, a);
    if (spec.kind == FieldKind::padic) {
        int64_t code = 0;
        for (int i = spec.f - 1; i >= 0; --i)
            code = code * spec.p + a.c[i] % spec.p;
        return code;
    }
    return a.c[0];
}

bool QuotRing::is_unit(const RElem& a) const { return residue_code(a) != 0; }

int QuotRing::val(const RElem& a) const
{
    check_ring(this, a);
    if (spec.kind == FieldKind::padic) {
        int best = m;
        for (int64_t c : a.c) {
            if (c == 0)
                continue;
            int v = 0;
            while (c % spec.p == 0) {
                c /= spec.p;
                ++v;
            }
            best = std::min(best, v);
        }
        return best;
    }
    for (int i = 0; i < m; ++i)
        if (a.c[i] != 0)
            return i;
    return m;
}

RElem QuotRing::inv(const RElem& a) const
{
    check_ring(this, a);
    if (!is_unit(a))
        throw Error("inverse of a non-unit ring element");
    if (spec.kind == FieldKind::padic) {
        // Hensel: start from the residue inverse, then v <- v(2 - av)
        int64_t res_inv = residue_field->inv(residue_code(a));
        RElem v = zero();
        {
            // unpack the residue inverse into the coefficient basis
            int64_t code = res_inv;
            for (int i = 0; i < spec.f; ++i) {
                v.c[i] = code % spec.p;
                code /= spec.p;
            }
        }
        RElem two = from_int(2);
        for (int iter = 0; iter < m + 2; ++iter) {
            RElem av = mul(a, v);
            RElem err = sub(two, av);
            v = mul(v, err);
            if (mul(a, v) == one())
                break;
        }
        if (mul(a, v) != one())
            throw Error("Hensel inversion did not converge");
        return v;
    }
    // power series inverse over F_q
    RElem out = zero();
    int64_t a0inv = coeff_field->inv(a.c[0]);
    out.c[0] = a0inv;
    for (int k = 1; k < m; ++k) {
        int64_t s = 0;
        for (int i = 1; i <= k; ++i)
            s = coeff_field->add(s, coeff_field->mul(a.c[i], out.c[k - i]));
        out.c[k] = coeff_field->neg(coeff_field->mul(a0inv, s));
    }
    return out;
}

RElem QuotRing::pow(const RElem& a, int64_t e) const
{
    if (e < 0)
        return pow(inv(a), -e);
    RElem acc = one();
    RElem base = a;
    while (e > 0) {
        if (e & 1)
            acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

RElem QuotRing::reduce_to(const RElem& a, int m2) const
{
    check_ring(this, a);
    if (m2 > m)
        throw Error("reduce_to: target precision exceeds source");
    if (m2 == m)
        return a;
    const QuotRing& r2 = QuotRing::get(spec, m2);
    RElem out = r2.zero();
    if (spec.kind == FieldKind::padic) {
        for (size_t i = 0; i < a.c.size(); ++i)
            out.c[i] = a.c[i] % r2.pm;
    } else {
        for (int i = 0; i < m2; ++i)
            out.c[i] = a.c[i];
    }
    return out;
}

RElem QuotRing::lift_to(const RElem& a, int m2) const
{
    check_ring(this, a);
    if (m2 < m)
        throw Error("lift_to: target precision below source");
    if (m2 == m)
        return a;
    const QuotRing& r2 = QuotRing::get(spec, m2);
    RElem out = r2.zero();
    for (size_t i = 0; i < a.c.size(); ++i)
        out.c[i] = a.c[i];
    return out;
}

RElem QuotRing::shift_down(const RElem& a, int k) const
{
    check_ring(this, a);
    if (k == 0)
        return a;
    if (k < 0 || k > m || val(a) < k)
        throw Error("shift_down: element is not divisible by pi^k at this precision");
    if (k == m)
        throw Error("shift_down: no precision left");
    const QuotRing& r2 = QuotRing::get(spec, m - k);
    RElem out = r2.zero();
    if (spec.kind == FieldKind::padic) {
        int64_t pk = ipow(spec.p, k);
        for (size_t i = 0; i < a.c.size(); ++i)
            out.c[i] = (a.c[i] / pk) % r2.pm;
    } else {
        for (int i = 0; i < m - k; ++i)
            out.c[i] = a.c[i + k];
    }
    return out;
}

RElem QuotRing::frob(const RElem& a, int iters) const
{
    check_ring(this, a);
    if (spec.f == 1)
        return a;
    if (spec.kind == FieldKind::laurent) {
        RElem out = a;
        for (auto& c : out.c)
            c = coeff_field->frob(c, iters);
        return out;
    }
    int k = ((iters % spec.f) + spec.f) % spec.f;
    RElem out = a;
    RElem gen_image = RElem{this, frob_gen};
    for (int step = 0; step < k; ++step) {
        RElem acc = zero();
        RElem power = one();
        for (int i = 0; i < spec.f; ++i) {
            RElem term = power;
            for (auto& c : term.c)
                c = mulmod(c, out.c[i], pm);
            acc = add(acc, term);
            power = mul(power, gen_image);
        }
        out = acc;
    }
    return out;
}

uint64_t QuotRing::encode(const RElem& a) const
{
    check_ring(this, a);
    uint64_t code = 0;
    if (spec.kind == FieldKind::padic) {
        for (int i = spec.f - 1; i >= 0; --i)
            code = code * static_cast<uint64_t>(pm) + static_cast<uint64_t>(a.c[i]);
    } else {
        uint64_t q = static_cast<uint64_t>(spec.q());
        for (int i = m - 1; i >= 0; --i)
            code = code * q + static_cast<uint64_t>(a.c[i]);
    }
    return code;
}

RElem QuotRing::decode(uint64_t code) const
{
    RElem out = zero();
    if (spec.kind == FieldKind::padic) {
        for (int i = 0; i < spec.f; ++i) {
            out.c[i] = static_cast<int64_t>(code % static_cast<uint64_t>(pm));
            code /= static_cast<uint64_t>(pm);
        }
    } else {
        uint64_t q = static_cast<uint64_t>(spec.q());
        for (int i = 0; i < m; ++i) {
            out.c[i] = static_cast<int64_t>(code % q);
            code /= q;
        }
    }
    return out;
}

void QuotRing::for_each_element(const std::function<void(const RElem&)>& fn) const
{
    if (card() > kEnumLimit)
        throw Error("quotient ring too large to enumerate");
    int64_t radix = spec.kind == FieldKind::padic ? pm : spec.q();
    RElem cur = zero();
    while (true) {
        fn(cur);
        int i = 0;
        for (; i < static_cast<int>(cur.c.size()); ++i) {
            if (cur.c[i] + 1 < radix) {
                ++cur.c[i];
                break;
            }
            cur.c[i] = 0;
        }
        if (i == static_cast<int>(cur.c.size()))
            return;
    }
}

void QuotRing::for_each_unit(const std::function<void(const RElem&)>& fn) const
{
    for_each_element([&](const RElem& e) {
        if (is_unit(e))
            fn(e);
    });
}

// ------------------------------------------------------------ UnramEmbedding

const UnramEmbedding& UnramEmbedding::get(const LocalFieldSpec& base, int fprime, int m)
{
    static std::map<std::string, std::unique_ptr<UnramEmbedding>> cache;
    std::string key =
        base.str() + "|f'=" + std::to_string(fprime) + "|m=" + std::to_string(m);
    {
        std::lock_guard<std::mutex> lk(g_intern_mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return *it->second;
    }
    auto emb = std::unique_ptr<UnramEmbedding>(new UnramEmbedding());
    emb->fprime = fprime;
    emb->base_ring = &QuotRing::get(base, m);
    emb->ext_ring = &QuotRing::get(base.unram_ext(fprime), m);
    if (base.kind == FieldKind::padic && fprime > 1) {
        const QuotRing& ext = *emb->ext_ring;
        const QuotRing& br = *emb->base_ring;
        int fk = base.f;
        // embedded image of the base generator: Hensel root of the base
        // modulus inside the extension ring
        RElem root = ext.one();
        if (fk > 1) {
            const SubfieldMap& smap =
                SubfieldMap::get(*br.residue_field, *ext.residue_field);
            int64_t res_root = smap.fwd(br.residue_field->p); // image of "x"
            root = ext.zero();
            {
                int64_t code = res_root;
                for (int i = 0; i < ext.spec.f; ++i) {
                    root.c[i] = code % ext.spec.p;
                    code /= ext.spec.p;
                }
            }
            auto eval_poly = [&](const std::vector<int64_t>& coeffs, const RElem& at) {
                RElem acc = ext.zero();
                for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
                    acc = ext.add(ext.mul(acc, at), ext.from_int(coeffs[i]));
                return acc;
            };
            std::vector<int64_t> deriv(fk, 0);
            for (int i = 1; i <= fk; ++i)
                deriv[i - 1] = (i % ext.pm) * br.modulus[i] % ext.pm;
            std::vector<int64_t> base_mod(br.modulus.begin(), br.modulus.end());
            for (int iter = 0; iter < 2 * m + 4; ++iter) {
                RElem h = eval_poly(base_mod, root);
                if (ext.is_zero(h))
                    break;
                RElem hp = eval_poly(deriv, root);
                root = ext.sub(root, ext.mul(h, ext.inv(hp)));
            }
            {
                auto check = eval_poly(base_mod, root);
                if (!ext.is_zero(check))
                    throw Error("embedding root lift did not converge");
            }
        }
        emb->gen_powers.clear();
        RElem power = ext.one();
        for (int j = 0; j < fk; ++j) {
            emb->gen_powers.push_back(power);
            power = ext.mul(power, root);
        }
        // precompute Gauss-Jordan elimination data for project():
        // rows of T track the row operations applied to the power matrix
        int rows = ext.spec.f;
        std::vector<std::vector<int64_t>> a(rows, std::vector<int64_t>(fk, 0));
        for (int col = 0; col < fk; ++col)
            for (int row = 0; row < rows; ++row)
                a[row][col] = emb->gen_powers[col].c[row];
        std::vector<std::vector<int64_t>> t(rows, std::vector<int64_t>(rows, 0));
        for (int i = 0; i < rows; ++i)
            t[i][i] = 1;
        int64_t pm = ext.pm;
        int64_t p = ext.spec.p;
        std::vector<bool> used(rows, false);
        for (int col = 0; col < fk; ++col) {
            int pivot = -1;
            for (int row = 0; row < rows; ++row) {
                if (!used[row] && a[row][col] % p != 0) {
                    pivot = row;
                    break;
                }
            }
            if (pivot < 0)
                throw Error("embedding matrix is singular (should be unreachable)");
            used[pivot] = true;
            int64_t inv_piv = invmod(a[pivot][col], pm);
            for (int j = 0; j < fk; ++j)
                a[pivot][j] = mulmod(a[pivot][j], inv_piv, pm);
            for (int j = 0; j < rows; ++j)
                t[pivot][j] = mulmod(t[pivot][j], inv_piv, pm);
            for (int row = 0; row < rows; ++row) {
                if (row == pivot)
                    continue;
                int64_t factor = a[row][col];
                if (factor == 0)
                    continue;
                for (int j = 0; j < fk; ++j)
                    a[row][j] =
                        (a[row][j] - mulmod(factor, a[pivot][j], pm) % pm + pm) % pm;
                for (int j = 0; j < rows; ++j)
                    t[row][j] =
                        (t[row][j] - mulmod(factor, t[pivot][j], pm) % pm + pm) % pm;
            }
            emb->pivots.push_back({col, pivot, inv_piv});
        }
        emb->elim = std::move(t);
    }
    std::lock_guard<std::mutex> lk(g_intern_mutex);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::move(emb)).first;
    return *it->second;
}

RElem UnramEmbedding::embed(const RElem& x) const
{
    check_ring(base_ring, x);
    const QuotRing& ext = *ext_ring;
    if (base_ring->spec.kind == FieldKind::laurent) {
        const SubfieldMap& smap =
            SubfieldMap::get(*base_ring->residue_field, *ext.residue_field);
        RElem out = ext.zero();
        for (size_t i = 0; i < x.c.size(); ++i)
            out.c[i] = smap.fwd(x.c[i]);
        return out;
    }
    if (fprime == 1)
        return RElem{&ext, x.c};
    RElem acc = ext.zero();
    for (size_t i = 0; i < x.c.size(); ++i) {
        RElem term = gen_powers[i];
        for (auto& c : term.c)
            c = mulmod(c, x.c[i], ext.pm);
        acc = ext.add(acc, term);
    }
    return acc;
}

RElem UnramEmbedding::project(const RElem& y) const
{
    check_ring(ext_ring, y);
    const QuotRing& br = *base_ring;
    if (base_ring->spec.kind == FieldKind::laurent) {
        const SubfieldMap& smap =
            SubfieldMap::get(*br.residue_field, *ext_ring->residue_field);
        RElem out = br.zero();
        for (size_t i = 0; i < y.c.size(); ++i)
            out.c[i] = smap.back(y.c[i]);
        return out;
    }
    if (fprime == 1)
        return RElem{&br, y.c};
    int fk = br.spec.f;
    if (fk == 1) {
        for (size_t i = 1; i < y.c.size(); ++i)
            if (y.c[i] != 0)
                throw Error("element does not lie in the base subring");
        RElem out = br.zero();
        out.c[0] = y.c[0];
        return out;
    }
    int rows = ext_ring->spec.f;
    int64_t pm = ext_ring->pm;
    std::vector<int64_t> z(rows, 0);
    for (int i = 0; i < rows; ++i) {
        __int128 s = 0;
        for (int j = 0; j < rows; ++j)
            s += static_cast<__int128>(elim[i][j]) * y.c[j];
        z[i] = static_cast<int64_t>(((s % pm) + pm) % pm);
    }
    RElem out = br.zero();
    std::vector<bool> is_pivot_row(rows, false);
    for (const auto& piv : pivots) {
        out.c[piv.col] = z[piv.row];
        is_pivot_row[piv.row] = true;
    }
    for (int i = 0; i < rows; ++i)
        if (!is_pivot_row[i] && z[i] != 0)
            throw Error("element does not lie in the base subring");
    return out;
}

RElem UnramEmbedding::rel_frob(const RElem& y, int times) const
{
    check_ring(ext_ring, y);
    return ext_ring->frob(y, base_ring->spec.f * times);
}

RElem UnramEmbedding::trace_to_base(const RElem& y) const
{
    const QuotRing& ext = *ext_ring;
    RElem acc = y;
    RElem conj = y;
    for (int i = 1; i < fprime; ++i) {
        conj = rel_frob(conj);
        acc = ext.add(acc, conj);
    }
    return project(acc);
}

RElem UnramEmbedding::norm_to_base(const RElem& y) const
{
    const QuotRing& ext = *ext_ring;
    RElem acc = y;
    RElem conj = y;
    for (int i = 1; i < fprime; ++i) {
        conj = rel_frob(conj);
        acc = ext.mul(acc, conj);
    }
    return project(acc);
}

RElem trace_to_base(const RElem& x, const LocalFieldSpec& base)
{
    const LocalFieldSpec& lspec = x.ring->spec;
    if (lspec.kind != base.kind || lspec.p != base.p || lspec.f % base.f != 0)
        throw Error("trace_to_base: not an unramified extension of the base");
    int fprime = lspec.f / base.f;
    return UnramEmbedding::get(base, fprime, x.ring->m).trace_to_base(x);
}

RElem norm_to_base(const RElem& x, const LocalFieldSpec& base)
{
    const LocalFieldSpec& lspec = x.ring->spec;
    if (lspec.kind != base.kind || lspec.p != base.p || lspec.f % base.f != 0)
        throw Error("norm_to_base: not an unramified extension of the base");
    int fprime = lspec.f / base.f;
    return UnramEmbedding::get(base, fprime, x.ring->m).norm_to_base(x);
}

// ------------------------------------------------------------------ KElement

KElement KElement::make(const LocalFieldSpec& field, int64_t v, RElem unit)
{
    if (unit.ring->spec != field)
        throw Error("KElement: unit part belongs to a different field");
    if (!unit.ring->is_unit(unit))
        throw Error("KElement: unit part is not a unit");
    return KElement{field, v, std::move(unit)};
}

KElement KElement::pi_pow(const LocalFieldSpec& field, int64_t v, int m)
{
    return KElement{field, v, QuotRing::get(field, m).one()};
}

KElement KElement::from_int_unit(const LocalFieldSpec& field, int64_t v, int64_t unit,
                                 int m)
{
    return make(field, v, QuotRing::get(field, m).from_int(unit));
}

KElement KElement::mul(const KElement& o) const
{
    if (field != o.field)
        throw Error("KElement: field mismatch");
    int m = std::min(prec(), o.prec());
    const QuotRing& r = QuotRing::get(field, m);
    RElem a = u.ring->reduce_to(u, m);
    RElem b = o.u.ring->reduce_to(o.u, m);
    return KElement{field, v + o.v, r.mul(a, b)};
}

KElement KElement::inv() const
{
    return KElement{field, -v, u.ring->inv(u)};
}

KElement KElement::pow(int64_t e) const
{
    RElem up = u.ring->pow(u, e);
    return KElement{field, v * e, std::move(up)};
}

// ----------------------------------------------------------------- UnitGroup

const UnitGroup& UnitGroup::get(const QuotRing& ring)
{
    static std::map<const QuotRing*, std::unique_ptr<UnitGroup>> cache;
    {
        std::lock_guard<std::mutex> lk(g_intern_mutex);
        auto it = cache.find(&ring);
        if (it != cache.end())
            return *it->second;
    }
    if (ring.unit_count() > kEnumLimit)
        throw Error("unit group too large to enumerate");
    auto ug = std::unique_ptr<UnitGroup>(new UnitGroup());
    ug->ring = &ring;
    ring.for_each_unit([&](const RElem& e) { ug->units.push_back(e); });
    int n = static_cast<int>(ug->units.size());
    std::unordered_map<uint64_t, int> index;
    index.reserve(static_cast<size_t>(n) * 2);
    for (int i = 0; i < n; ++i)
        index[ring.encode(ug->units[i])] = i;
    MulFn mul = [&](int a, int b) {
        return index.at(ring.encode(ring.mul(ug->units[a], ug->units[b])));
    };
    int identity = index.at(ring.encode(ring.one()));
    AbelianBasis basis = abelian_basis(n, mul, identity);
    if (basis.gens.size() == 1) {
        // cyclic: present the first generator in enumeration order
        for (int i = 0; i < n; ++i) {
            if (element_order_dividing(mul, identity, i, n) == basis.orders[0]) {
                basis.gens[0] = i;
                break;
            }
        }
    }
    for (int g : basis.gens)
        ug->gens.push_back(ug->units[g]);
    ug->orders = basis.orders;

    // fill the dlog table by walking the generator box; the walk doubles as
    // the verification that the presentation is a direct product
    {
        int64_t total = 1;
        for (int64_t d : ug->orders)
            total *= d;
        if (total != n)
            throw Error("unit group presentation has wrong order");
        size_t r = ug->gens.size();
        std::vector<int64_t> exps(r, 0);
        RElem cur = ring.one();
        ug->dlog_packed_.reserve(static_cast<size_t>(n) * 2);
        for (int64_t packed = 0; packed < total; ++packed) {
            uint64_t code = ring.encode(cur);
            if (!ug->dlog_packed_.emplace(code, static_cast<uint64_t>(packed)).second)
                throw Error("unit group presentation is not a direct product");
            if (packed + 1 == total)
                break;
            // odometer increment; wrapping a position multiplies by the
            // generator once more, completing its full cycle
            size_t i = r;
            while (true) {
                --i;
                cur = ring.mul(cur, ug->gens[i]);
                if (exps[i] + 1 < ug->orders[i]) {
                    ++exps[i];
                    break;
                }
                exps[i] = 0;
            }
        }
        if (ug->dlog_packed_.size() != static_cast<size_t>(n))
            throw Error("unit group presentation does not cover all units");
    }
    std::lock_guard<std::mutex> lk(g_intern_mutex);
    auto it = cache.find(&ring);
    if (it == cache.end())
        it = cache.emplace(&ring, std::move(ug)).first;
    return *it->second;
}

std::vector<int64_t> UnitGroup::dlog(const RElem& u) const
{
    check_ring(ring, u);
    auto it = dlog_packed_.find(ring->encode(u));
    if (it == dlog_packed_.end())
        throw Error("dlog of a non-unit");
    uint64_t packed = it->second;
    std::vector<int64_t> exps(gens.size(), 0);
    for (size_t i = gens.size(); i > 0; --i) {
        exps[i - 1] = static_cast<int64_t>(packed % static_cast<uint64_t>(orders[i - 1]));
        packed /= static_cast<uint64_t>(orders[i - 1]);
    }
    return exps;
}

} // namespace eps0
