#include "leo/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "leo/error.hpp"

namespace leo::nt {

namespace {

using u64 = std::uint64_t;
using Fp = std::vector<u64>;  // ascending, trimmed

void trim(Fp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Fp& a) { return static_cast<int>(a.size()) - 1; }

u64 powm(u64 b, u64 e, u64 p) {
    u64 r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

u64 inv(u64 a, u64 p) { return powm(a, p - 2, p); }

Fp reduce(const IntPoly& f, u64 p) {
    Fp r(f.coeffs().size());
    mpz_class t;
    for (std::size_t i = 0; i < r.size(); ++i) {
        mpz_fdiv_r_ui(t.get_mpz_t(), f.coeffs()[i].get_mpz_t(), p);
        r[i] = t.get_ui();
    }
    trim(r);
    return r;
}

Fp sub(const Fp& a, const Fp& b, u64 p) {
    Fp r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

Fp mul(const Fp& a, const Fp& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Fp r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

// a = q*b + r
void divmod(const Fp& a, const Fp& b, u64 p, Fp* q, Fp* r) {
    Fp rem = a;
    int db = deg(b);
    u64 li = inv(b.back(), p);
    Fp quo(std::max(0, deg(a) - db + 1));
    for (int i = deg(rem); i >= db; --i) {
        u64 c = rem[i] * li % p;
        if (!quo.empty()) quo[i - db] = c;
        if (!c) continue;
        for (int j = 0; j <= db; ++j) rem[i - db + j] = (rem[i - db + j] + p - c * b[j] % p) % p;
    }
    trim(rem);
    trim(quo);
    if (q) *q = quo;
    if (r) *r = rem;
}

Fp mod(const Fp& a, const Fp& m, u64 p) {
    Fp r;
    divmod(a, m, p, nullptr, &r);
    return r;
}

Fp monic(Fp a, u64 p) {
    if (a.empty()) return a;
    u64 li = inv(a.back(), p);
    for (auto& x : a) x = x * li % p;
    return a;
}

Fp gcd(Fp a, Fp b, u64 p) {
    while (!b.empty()) {
        Fp r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

// Extended gcd: s*a + t*b = 1, assuming coprime.
void bezout(const Fp& a, const Fp& b, u64 p, Fp& s, Fp& t) {
    Fp r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        Fp q, r;
        divmod(r0, r1, p, &q, &r);
        Fp s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (deg(r0) != 0) throw Error(Errc::ValidationFailed, "Hensel factors not coprime");
    u64 ci = inv(r0[0], p);
    for (auto& x : s0) x = x * ci % p;
    for (auto& x : t0) x = x * ci % p;
    s = s0;
    t = t0;
}

Fp powmod(Fp b, mpz_class e, const Fp& m, u64 p) {
    Fp r{1};
    b = mod(b, m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mod(mul(r, b, p), m, p);
        b = mod(mul(b, b, p), m, p);
        e >>= 1;
    }
    return r;
}

// Distinct-degree factorisation of a monic squarefree f: (degree, product) pairs.
std::vector<std::pair<int, Fp>> ddf(Fp f, u64 p) {
    std::vector<std::pair<int, Fp>> out;
    Fp h{0, 1};
    const Fp x{0, 1};
    for (int d = 1; 2 * d <= deg(f); ++d) {
        h = powmod(h, p, f, p);
        Fp g = gcd(f, sub(h, x, p), p);
        if (deg(g) > 0) {
            out.emplace_back(d, g);
            Fp q;
            divmod(f, g, p, &q, nullptr);
            f = q;
            h = mod(h, f, p);
        }
    }
    if (deg(f) > 0) out.emplace_back(deg(f), f);
    return out;
}

// Cantor-Zassenhaus equal-degree splitting for odd p.
void edf(const Fp& f, int d, u64 p, std::mt19937_64& rng, std::vector<Fp>& out) {
    if (deg(f) == d) {
        out.push_back(f);
        return;
    }
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, d);
    e = (e - 1) / 2;
    for (;;) {
        Fp a(deg(f));
        for (auto& c : a) c = rng() % p;
        trim(a);
        if (deg(a) < 1) continue;
        Fp g = gcd(f, a, p);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            Fp q;
            divmod(f, g, p, &q, nullptr);
            edf(g, d, p, rng, out);
            edf(monic(q, p), d, p, rng, out);
            return;
        }
        g = gcd(f, sub(powmod(a, e, f, p), Fp{1}, p), p);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            Fp q;
            divmod(f, g, p, &q, nullptr);
            edf(g, d, p, rng, out);
            edf(monic(q, p), d, p, rng, out);
            return;
        }
    }
}

bool is_prime_small(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Monic associate g(x) = a^(n-1) f(x/a) of a primitive polynomial with leading coefficient a.
IntPoly monic_associate(const IntPoly& f) {
    int n = f.degree();
    std::vector<mpz_class> c(n + 1);
    c[n] = 1;
    mpz_class pw = 1;
    for (int i = n - 1; i >= 0; --i) {
        c[i] = f.coeff(i) * pw;
        pw *= f.lc();
    }
    return IntPoly(std::move(c));
}

IntPoly lift_to_int(const Fp& a) {
    std::vector<mpz_class> c(a.begin(), a.end());
    return IntPoly(std::move(c));
}

Fp reduce_p(const IntPoly& f, u64 p) { return reduce(f, p); }

// Lift f = g*h (mod p^k) to f = G*H (mod p^K), with f, g, h monic.
void hensel_pair(const IntPoly& f, IntPoly& g, IntPoly& h, u64 p, const mpz_class& target) {
    Fp s, t;
    bezout(reduce_p(g, p), reduce_p(h, p), p, s, t);
    mpz_class pk = p;
    while (pk < target) {
        IntPoly e = f - g * h;
        std::vector<mpz_class> ec = e.coeffs();
        for (auto& c : ec) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
        Fp ep = reduce(IntPoly(ec), p);
        Fp gp = reduce_p(g, p), hp = reduce_p(h, p);
        Fp q, r;
        divmod(mul(ep, t, p), gp, p, &q, &r);
        Fp dh;
        divmod(sub(ep, mul(r, hp, p), p), gp, p, &dh, nullptr);
        g = g + lift_to_int(r).scaled(pk);
        h = h + lift_to_int(dh).scaled(pk);
        pk *= p;
        g = g.mod(pk);
        h = h.mod(pk);
    }
}

void hensel_multi(const IntPoly& f, const std::vector<Fp>& fac, u64 p, const mpz_class& target,
                  std::vector<IntPoly>& out) {
    if (fac.size() == 1) {
        out.push_back(f.mod(target));
        return;
    }
    std::size_t half = fac.size() / 2;
    Fp a{1}, b{1};
    for (std::size_t i = 0; i < half; ++i) a = mul(a, fac[i], p);
    for (std::size_t i = half; i < fac.size(); ++i) b = mul(b, fac[i], p);
    IntPoly g = lift_to_int(a), h = lift_to_int(b);
    hensel_pair(f, g, h, p, target);
    hensel_multi(g, {fac.begin(), fac.begin() + half}, p, target, out);
    hensel_multi(h, {fac.begin() + half, fac.end()}, p, target, out);
}

struct PrimeData {
    u64 p;
    std::vector<std::pair<int, Fp>> parts;
    int count;
};

std::vector<PrimeData> good_primes(const IntPoly& f, int want) {
    std::vector<PrimeData> out;
    mpz_class lc = f.lc();
    for (u64 p = 3; static_cast<int>(out.size()) < want && p < 100000; p += 2) {
        if (!is_prime_small(p) || mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
        Fp fp = monic(reduce(f, p), p);
        Fp d = reduce(f.derivative(), p);
        if (d.empty() || deg(gcd(fp, d, p)) > 0) continue;
        PrimeData pd{p, ddf(fp, p), 0};
        for (auto& [dd, g] : pd.parts) pd.count += deg(g) / dd;
        out.push_back(std::move(pd));
    }
    return out;
}

std::vector<bool> degree_set(const PrimeData& pd, int n) {
    std::vector<bool> can(n + 1, false);
    can[0] = true;
    for (auto& [d, g] : pd.parts)
        for (int k = 0; k < deg(g) / d; ++k)
            for (int s = n; s >= d; --s)
                if (can[s - d]) can[s] = true;
    return can;
}

}  // namespace

std::vector<bool> possible_factor_degrees(const IntPoly& f0, int primes) {
    IntPoly f = f0.primitive();
    int n = f.degree();
    if (n < 1) throw Error(Errc::InvalidArgument, "constant polynomial");
    if (!squarefree(f)) throw Error(Errc::InvalidArgument, "polynomial is not squarefree");
    std::vector<bool> allowed(n + 1, true);
    for (const auto& pd : good_primes(f, primes)) {
        auto can = degree_set(pd, n);
        for (int d = 0; d <= n; ++d) allowed[d] = allowed[d] && can[d];
    }
    return allowed;
}

std::optional<IntPoly> find_factor(const IntPoly& f0) {
    IntPoly f = f0.primitive();
    int n = f.degree();
    if (n < 2) return std::nullopt;
    if (!squarefree(f)) return gcd_q(f, f.derivative());
    if (f.coeff(0) == 0) return IntPoly::x();
    if (!f.is_monic()) {
        auto g = find_factor(monic_associate(f));
        if (!g) return std::nullopt;
        // undo x -> a x: g(a x) shares a factor with f
        std::vector<mpz_class> c = g->coeffs();
        mpz_class pw = 1;
        for (auto& x : c) {
            x *= pw;
            pw *= f.lc();
        }
        return gcd_q(f, IntPoly(c));
    }
    auto primes = good_primes(f, 25);
    std::vector<bool> allowed(n + 1, true);
    for (const auto& pd : primes) {
        auto can = degree_set(pd, n);
        for (int d = 0; d <= n; ++d) allowed[d] = allowed[d] && can[d];
    }
    bool any = false;
    for (int d = 1; d < n; ++d) any = any || allowed[d];
    if (!any) return std::nullopt;

    const PrimeData& best =
        *std::min_element(primes.begin(), primes.end(), [](auto& a, auto& b) { return a.count < b.count; });
    u64 p = best.p;
    std::mt19937_64 rng(0x5eed);
    std::vector<Fp> fac;
    for (auto& [d, g] : best.parts) edf(g, d, p, rng, fac);

    // Factor coefficient bound 2^n |f|_2, doubled for symmetric residues.
    mpz_class norm2 = 0;
    for (auto& c : f.coeffs()) norm2 += c * c;
    mpz_class bound = sqrt(norm2) + 1;
    bound <<= (n + 1);
    mpz_class pk = p;
    while (pk < bound) pk *= p;
    std::vector<IntPoly> lifted;
    hensel_multi(f, fac, p, pk, lifted);

    std::size_t r = lifted.size();
    for (std::size_t size = 1; 2 * size <= r; ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            int d = 0;
            for (auto i : idx) d += lifted[i].degree();
            if (allowed[d]) {
                IntPoly g = IntPoly::constant(1);
                for (auto i : idx) g = (g * lifted[i]).mod(pk);
                g = g.smod(pk);
                if (divides(g, f)) return g.primitive();
            }
            std::size_t k = size;
            while (k > 0 && idx[k - 1] == r - size + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return std::nullopt;
}

bool irreducible_over_q(const IntPoly& f) {
    if (f.degree() < 1) return false;
    return !find_factor(f).has_value();
}

}  // namespace leo::nt
