#include "leo/sturm.hpp"

#include "leo/error.hpp"

namespace leo::nt {

namespace {

IntPoly positive_primitive(const IntPoly& p) {
    if (p.is_zero()) return p;
    mpz_class g = p.content();
    std::vector<mpz_class> c = p.coeffs();
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

// Sign-correct negated remainder: a positive multiple of -(a mod b).
IntPoly neg_rem(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> r = a.coeffs();
    int db = b.degree();
    const mpz_class l = abs(b.lc());
    for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
        mpz_class t = r[i];
        for (auto& x : r) x *= l;
        // subtract (t*l/lc) * x^(i-db) * b; with l = |lc| this is t*sign(lc)
        int s = sgn(b.lc());
        for (int j = 0; j <= db; ++j) r[i - db + j] -= s * t * b.coeff(j);
        r.resize(i);
    }
    return -positive_primitive(IntPoly(std::move(r)));
}

int sign_changes(const std::vector<IntPoly>& chain, const mpq_class& x) {
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        int s = p.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

mpz_class cauchy_bound(const IntPoly& f) {
    mpz_class m = 0;
    for (int i = 0; i < f.degree(); ++i) m = std::max<mpz_class>(m, abs(f.coeff(i)));
    mpz_class b = m / abs(f.lc()) + 2;
    return b;
}

void isolate(const std::vector<IntPoly>& chain, const mpq_class& lo, const mpq_class& hi, int count,
             std::vector<RootInterval>& out) {
    if (count == 0) return;
    if (count == 1) {
        out.push_back({lo, hi});
        return;
    }
    mpq_class mid = (lo + hi) / 2;
    int left = sturm_count(chain, lo, mid);
    isolate(chain, lo, mid, left, out);
    isolate(chain, mid, hi, count - left, out);
}

}  // namespace

std::vector<IntPoly> sturm_chain(const IntPoly& f) {
    std::vector<IntPoly> chain{f, f.derivative()};
    while (chain.back().degree() > 0) {
        IntPoly r = neg_rem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(r);
    }
    return chain;
}

int sturm_count(const std::vector<IntPoly>& chain, const mpq_class& a, const mpq_class& b) {
    return sign_changes(chain, a) - sign_changes(chain, b);
}

std::vector<RootInterval> real_roots(const IntPoly& f) {
    if (f.degree() < 1) return {};
    if (!squarefree(f)) throw Error(Errc::InvalidArgument, "real_roots needs a squarefree polynomial");
    auto chain = sturm_chain(f);
    mpq_class b(cauchy_bound(f));
    std::vector<RootInterval> raw;
    isolate(chain, -b, b, sturm_count(chain, -b, b), raw);
    for (auto& iv : raw) {
        if (f.sign_at(iv.hi) == 0) {
            iv.lo = iv.hi;
            continue;
        }
        while (f.sign_at(iv.lo) == 0) {
            mpq_class mid = (iv.lo + iv.hi) / 2;
            if (f.sign_at(mid) == 0) {
                iv.lo = iv.hi = mid;
                break;
            }
            if (sturm_count(chain, iv.lo, mid) == 1)
                iv.hi = mid;
            else
                iv.lo = mid;
        }
    }
    return raw;
}

RootInterval refine(const IntPoly& f, RootInterval iv, unsigned bits) {
    if (iv.exact()) return iv;
    mpq_class width(1);
    width /= mpq_class(mpz_class(1) << bits);
    int slo = f.sign_at(iv.lo);
    while (iv.hi - iv.lo > width) {
        mpq_class mid = (iv.lo + iv.hi) / 2;
        int s = f.sign_at(mid);
        if (s == 0) return {mid, mid};
        if (s == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    return iv;
}

Signature signature(const IntPoly& f) {
    if (!squarefree(f)) throw Error(Errc::InvalidArgument, "signature needs a squarefree polynomial");
    int r1 = static_cast<int>(real_roots(f).size());
    return {r1, (f.degree() - r1) / 2};
}

}  // namespace leo::nt
