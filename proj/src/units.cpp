#include "leo/units.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>

#include "leo/error.hpp"
#include "leo/sturm.hpp"

namespace leo::nt {

const char* independence_name(Independence v) {
    switch (v) {
        case Independence::Independent: return "independent";
        case Independence::Dependent: return "dependent";
        case Independence::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

class Mp {
public:
    explicit Mp(mpfr_prec_t p) {
        mpfr_init2(v, p);
        mpfr_set_zero(v, 1);
    }
    Mp(const Mp& o) {
        mpfr_init2(v, mpfr_get_prec(o.v));
        mpfr_set(v, o.v, MPFR_RNDN);
    }
    Mp& operator=(const Mp& o) {
        if (this != &o) {
            mpfr_set_prec(v, mpfr_get_prec(o.v));
            mpfr_set(v, o.v, MPFR_RNDN);
        }
        return *this;
    }
    ~Mp() { mpfr_clear(v); }
    mpfr_prec_t prec() const { return mpfr_get_prec(v); }
    mpfr_t v;
};

std::string mp_str(const Mp& x) {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.30Rg", x.v);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

// Closed interval [lo, hi] with outward rounding.
struct Ival {
    Mp lo, hi;
    explicit Ival(mpfr_prec_t p) : lo(p), hi(p) {}
    mpfr_prec_t prec() const { return lo.prec(); }
    bool has_zero() const { return mpfr_sgn(lo.v) <= 0 && mpfr_sgn(hi.v) >= 0; }
    bool positive() const { return mpfr_sgn(lo.v) > 0; }
};

Ival from_z(const mpz_class& z, mpfr_prec_t p) {
    Ival r(p);
    mpfr_set_z(r.lo.v, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi.v, z.get_mpz_t(), MPFR_RNDU);
    return r;
}

Ival from_q(const mpq_class& q, mpfr_prec_t p) {
    Ival r(p);
    mpfr_set_q(r.lo.v, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi.v, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Ival hull(const Mp& a, const Mp& b) {
    Ival r(a.prec());
    mpfr_set(r.lo.v, a.v, MPFR_RNDD);
    mpfr_set(r.hi.v, b.v, MPFR_RNDU);
    return r;
}

Ival operator+(const Ival& a, const Ival& b) {
    Ival r(a.prec());
    mpfr_add(r.lo.v, a.lo.v, b.lo.v, MPFR_RNDD);
    mpfr_add(r.hi.v, a.hi.v, b.hi.v, MPFR_RNDU);
    return r;
}

Ival operator-(const Ival& a, const Ival& b) {
    Ival r(a.prec());
    mpfr_sub(r.lo.v, a.lo.v, b.hi.v, MPFR_RNDD);
    mpfr_sub(r.hi.v, a.hi.v, b.lo.v, MPFR_RNDU);
    return r;
}

Ival operator*(const Ival& a, const Ival& b) {
    Ival r(a.prec());
    Mp t(a.prec());
    const mpfr_t* xs[2] = {&a.lo.v, &a.hi.v};
    const mpfr_t* ys[2] = {&b.lo.v, &b.hi.v};
    bool first = true;
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_mul(t.v, *x, *y, MPFR_RNDD);
            if (first || mpfr_less_p(t.v, r.lo.v)) mpfr_set(r.lo.v, t.v, MPFR_RNDD);
            mpfr_mul(t.v, *x, *y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.v, r.hi.v)) mpfr_set(r.hi.v, t.v, MPFR_RNDU);
            first = false;
        }
    return r;
}

Ival iabs(const Ival& a) {
    if (mpfr_sgn(a.lo.v) >= 0) return a;
    Ival r(a.prec());
    if (mpfr_sgn(a.hi.v) <= 0) {
        mpfr_neg(r.lo.v, a.hi.v, MPFR_RNDD);
        mpfr_neg(r.hi.v, a.lo.v, MPFR_RNDU);
        return r;
    }
    mpfr_set_zero(r.lo.v, 1);
    mpfr_neg(r.hi.v, a.lo.v, MPFR_RNDU);
    if (mpfr_greater_p(a.hi.v, r.hi.v)) mpfr_set(r.hi.v, a.hi.v, MPFR_RNDU);
    return r;
}

Ival isqr(const Ival& a) {
    Ival b = iabs(a);
    return b * b;
}

Ival ilog(const Ival& a) {
    Ival r(a.prec());
    mpfr_log(r.lo.v, a.lo.v, MPFR_RNDD);
    mpfr_log(r.hi.v, a.hi.v, MPFR_RNDU);
    return r;
}

struct CIval {
    Ival re, im;
};

CIval operator*(const CIval& a, const CIval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CIval operator+(const CIval& a, const CIval& b) { return {a.re + b.re, a.im + b.im}; }

CIval eval(const IntPoly& f, const CIval& z) {
    mpfr_prec_t p = z.re.prec();
    CIval acc{from_z(0, p), from_z(0, p)};
    for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * z + CIval{from_z(f.coeffs()[i], p), from_z(0, p)};
    return acc;
}

// Enclosure of one embedding: real roots have a zero imaginary part.
struct RootBox {
    bool real;
    CIval z;
};

using cld = std::complex<long double>;

std::vector<cld> durand_kerner(const IntPoly& f) {
    int n = f.degree();
    std::vector<long double> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = f.coeff(i).get_d() / f.lc().get_d();
    long double bound = 1;
    for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::fabs(c[i]));
    std::vector<cld> z(n);
    cld seed(0.4L, 0.9L), w(1);
    for (int k = 0; k < n; ++k) {
        z[k] = w * (bound / 2);
        w *= seed;
    }
    for (int it = 0; it < 5000; ++it) {
        long double change = 0;
        for (int k = 0; k < n; ++k) {
            cld num = 0;
            for (int i = n; i >= 0; --i) num = num * z[k] + c[i];
            cld den = 1;
            for (int j = 0; j < n; ++j)
                if (j != k) den *= (z[k] - z[j]);
            if (std::abs(den) == 0) den = 1e-30L;
            cld d = num / den;
            z[k] -= d;
            change = std::max(change, std::abs(d) / (1 + std::abs(z[k])));
        }
        if (change < 1e-18L) break;
    }
    return z;
}

struct MpC {
    Mp re, im;
    explicit MpC(mpfr_prec_t p) : re(p), im(p) {}
};

// Plain Newton refinement of a complex approximation.
MpC newton(const IntPoly& f, cld start, mpfr_prec_t p) {
    IntPoly df = f.derivative();
    MpC z(p);
    mpfr_set_ld(z.re.v, start.real(), MPFR_RNDN);
    mpfr_set_ld(z.im.v, start.imag(), MPFR_RNDN);
    Mp a(p), b(p), t(p), u(p), den(p);
    auto horner = [&](const IntPoly& g, Mp& rr, Mp& ri) {
        mpfr_set_zero(rr.v, 1);
        mpfr_set_zero(ri.v, 1);
        for (std::size_t i = g.coeffs().size(); i-- > 0;) {
            // (rr + i ri) * z + c
            mpfr_mul(t.v, rr.v, z.re.v, MPFR_RNDN);
            mpfr_mul(u.v, ri.v, z.im.v, MPFR_RNDN);
            mpfr_sub(t.v, t.v, u.v, MPFR_RNDN);
            mpfr_mul(u.v, rr.v, z.im.v, MPFR_RNDN);
            mpfr_fma(ri.v, ri.v, z.re.v, u.v, MPFR_RNDN);
            mpfr_add_z(rr.v, t.v, g.coeffs()[i].get_mpz_t(), MPFR_RNDN);
        }
    };
    int iters = 6;
    for (long bits = 40; bits < p; bits *= 2) ++iters;
    Mp fr(p), fi(p), dr(p), di(p);
    for (int it = 0; it < iters; ++it) {
        horner(f, fr, fi);
        horner(df, dr, di);
        // (fr + i fi) / (dr + i di)
        mpfr_sqr(den.v, dr.v, MPFR_RNDN);
        mpfr_fma(den.v, di.v, di.v, den.v, MPFR_RNDN);
        if (mpfr_zero_p(den.v)) break;
        mpfr_mul(a.v, fr.v, dr.v, MPFR_RNDN);
        mpfr_fma(a.v, fi.v, di.v, a.v, MPFR_RNDN);
        mpfr_mul(b.v, fi.v, dr.v, MPFR_RNDN);
        mpfr_mul(t.v, fr.v, di.v, MPFR_RNDN);
        mpfr_sub(b.v, b.v, t.v, MPFR_RNDN);
        mpfr_div(a.v, a.v, den.v, MPFR_RNDN);
        mpfr_div(b.v, b.v, den.v, MPFR_RNDN);
        mpfr_sub(z.re.v, z.re.v, a.v, MPFR_RNDN);
        mpfr_sub(z.im.v, z.im.v, b.v, MPFR_RNDN);
    }
    return z;
}

// Upper bound of |w| and lower bound of |w| for a complex interval.
void modulus_bounds(const CIval& w, Mp& lo, Mp& hi) {
    Ival m2 = isqr(w.re) + isqr(w.im);
    mpfr_sqrt(lo.v, m2.lo.v, MPFR_RNDD);
    mpfr_sqrt(hi.v, m2.hi.v, MPFR_RNDU);
}

struct Disk {
    Mp cre, cim, rad;
    explicit Disk(mpfr_prec_t p) : cre(p), cim(p), rad(p) {}
};

bool disjoint(const Disk& a, const Disk& b) {
    mpfr_prec_t p = a.rad.prec();
    Ival dre = hull(a.cre, a.cre) - hull(b.cre, b.cre);
    Ival dim = hull(a.cim, a.cim) - hull(b.cim, b.cim);
    Ival d2 = isqr(dre) + isqr(dim);
    Mp s(p);
    mpfr_add(s.v, a.rad.v, b.rad.v, MPFR_RNDU);
    mpfr_sqr(s.v, s.v, MPFR_RNDU);
    return mpfr_greater_p(d2.lo.v, s.v);
}

// Rigorous enclosures of r1 real and r2 complex embeddings (one per conjugate pair).
std::optional<std::vector<RootBox>> enclose_roots(const IntPoly& f, const std::vector<RootInterval>& real_iso,
                                                  const std::vector<cld>& approx, unsigned bits) {
    mpfr_prec_t p = bits + 32;
    int n = f.degree();
    int r1 = static_cast<int>(real_iso.size());
    std::vector<RootBox> out;
    std::vector<Disk> disks;
    for (const auto& iv0 : real_iso) {
        RootInterval iv = refine(f, iv0, bits);
        Ival re = from_q(iv.lo, p);
        Ival hi = from_q(iv.hi, p);
        mpfr_set(re.hi.v, hi.hi.v, MPFR_RNDU);
        out.push_back({true, {re, from_z(0, p)}});
        Disk d(p);
        mpq_class mid = (iv.lo + iv.hi) / 2;
        mpfr_set_q(d.cre.v, mid.get_mpq_t(), MPFR_RNDN);
        // radius covers the interval around the rounded centre
        Ival c = hull(d.cre, d.cre);
        Ival w1 = c - re;
        Ival w2 = re - c;
        mpfr_max(d.rad.v, w1.hi.v, w2.hi.v, MPFR_RNDU);
        disks.push_back(std::move(d));
    }
    if (n == r1) return out;
    // Non-real approximations: drop the r1 closest to the axis.
    std::vector<cld> cand = approx;
    std::sort(cand.begin(), cand.end(), [](cld a, cld b) { return std::fabs(a.imag()) < std::fabs(b.imag()); });
    cand.erase(cand.begin(), cand.begin() + r1);
    std::vector<cld> upper;
    for (auto z : cand)
        if (z.imag() > 0) upper.push_back(z);
    if (static_cast<int>(upper.size()) * 2 != n - r1) return std::nullopt;
    IntPoly df = f.derivative();
    for (auto z0 : upper) {
        MpC z = newton(f, z0, p);
        CIval zc{hull(z.re, z.re), hull(z.im, z.im)};
        Mp flo(p), fhi(p), dlo(p), dhi(p);
        modulus_bounds(eval(f, zc), flo, fhi);
        modulus_bounds(eval(df, zc), dlo, dhi);
        if (mpfr_sgn(dlo.v) <= 0) return std::nullopt;
        Disk d(p);
        mpfr_set(d.cre.v, z.re.v, MPFR_RNDN);
        mpfr_set(d.cim.v, z.im.v, MPFR_RNDN);
        mpfr_mul_ui(d.rad.v, fhi.v, n, MPFR_RNDU);
        mpfr_div(d.rad.v, d.rad.v, dlo.v, MPFR_RNDU);
        if (!mpfr_greater_p(d.cim.v, d.rad.v)) return std::nullopt;  // must stay off the real axis
        Disk conj = d;
        mpfr_neg(conj.cim.v, conj.cim.v, MPFR_RNDN);
        Ival re(p), im(p);
        mpfr_sub(re.lo.v, d.cre.v, d.rad.v, MPFR_RNDD);
        mpfr_add(re.hi.v, d.cre.v, d.rad.v, MPFR_RNDU);
        mpfr_sub(im.lo.v, d.cim.v, d.rad.v, MPFR_RNDD);
        mpfr_add(im.hi.v, d.cim.v, d.rad.v, MPFR_RNDU);
        out.push_back({false, {re, im}});
        disks.push_back(std::move(d));
        disks.push_back(std::move(conj));
    }
    // n disks, each holding a root, pairwise disjoint: one root apiece.
    for (std::size_t i = 0; i < disks.size(); ++i)
        for (std::size_t j = i + 1; j < disks.size(); ++j)
            if (!disjoint(disks[i], disks[j])) return std::nullopt;
    return out;
}

// Row i: log|sigma_j(u_i)| (real) or log|sigma_j(u_i)|^2 (complex).
std::optional<std::vector<std::vector<Ival>>> log_matrix(const std::vector<OrderElem>& units,
                                                         const std::vector<RootBox>& roots) {
    std::vector<std::vector<Ival>> m;
    for (const auto& u : units) {
        std::vector<Ival> row;
        IntPoly up = u.as_poly();
        for (const auto& rb : roots) {
            CIval w = eval(up, rb.z);
            Ival mod2 = isqr(w.re) + isqr(w.im);
            if (!mod2.positive()) return std::nullopt;
            Ival l = ilog(mod2);
            if (rb.real) {
                // log|x| = log(x^2) / 2
                Ival half = from_q(mpq_class(1, 2), l.prec());
                l = l * half;
            }
            row.push_back(std::move(l));
        }
        m.push_back(std::move(row));
    }
    return m;
}

Ival leibniz(const std::vector<std::vector<Ival>>& m, const std::vector<int>& cols) {
    std::size_t r = cols.size();
    mpfr_prec_t p = m[0][0].prec();
    std::vector<std::size_t> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    Ival det = from_z(0, p);
    do {
        int inv = 0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                if (perm[i] > perm[j]) ++inv;
        Ival term = from_z(inv % 2 ? -1 : 1, p);
        for (std::size_t i = 0; i < r; ++i) term = term * m[i][cols[perm[i]]];
        det = det + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

void column_subsets(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        out.push_back(idx);
        int i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (int j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

long double midpoint(const Ival& x) {
    return (mpfr_get_ld(x.lo.v, MPFR_RNDN) + mpfr_get_ld(x.hi.v, MPFR_RNDN)) / 2;
}

OrderElem power_product(const std::vector<OrderElem>& units, const std::vector<long>& e) {
    OrderElem w = OrderElem::one(units[0].order_ptr());
    for (std::size_t i = 0; i < units.size(); ++i)
        if (e[i] != 0) w = w * units[i].pow(e[i]);
    return w;
}

// Small exponent vectors whose floating log combination nearly vanishes, checked exactly.
std::optional<std::vector<long>> search_relation(const std::vector<OrderElem>& units,
                                                 const std::vector<std::vector<long double>>& logs, long bound) {
    std::size_t r = units.size();
    std::size_t cols = logs[0].size();
    long double scale = 1;
    for (auto& row : logs)
        for (auto x : row) scale = std::max(scale, std::fabs(x));
    long double tol = 1e-9L * scale * bound * r;
    std::vector<long> e(r, -bound);
    for (;;) {
        // canonical sign: first nonzero entry positive
        auto nz = std::find_if(e.begin(), e.end(), [](long x) { return x != 0; });
        if (nz != e.end() && *nz > 0) {
            bool small = true;
            for (std::size_t j = 0; j < cols && small; ++j) {
                long double s = 0;
                for (std::size_t i = 0; i < r; ++i) s += e[i] * logs[i][j];
                small = std::fabs(s) < tol;
            }
            if (small && is_torsion(power_product(units, e))) return e;
        }
        std::size_t k = 0;
        while (k < r && e[k] == bound) e[k++] = -bound;
        if (k == r) break;
        ++e[k];
    }
    return std::nullopt;
}

}  // namespace

bool is_torsion(const OrderElem& u) {
    int n = u.order().degree();
    long kmax = 2L * n * n + 2;
    OrderElem w = u;
    for (long k = 1; k <= kmax; ++k) {
        if (w.is_one()) return true;
        w = w * u;
    }
    return false;
}

int unit_rank(const MonogenicOrder& o) {
    Signature s = signature(o.poly());
    return s.r1 + s.r2 - 1;
}

IndependenceResult units_independent(const std::vector<OrderElem>& units, const IndependenceOptions& opt) {
    IndependenceResult res;
    if (units.empty()) {
        res.verdict = Independence::Independent;
        res.note = "empty system";
        return res;
    }
    const IntPoly& f = units[0].order().poly();
    for (const auto& u : units) {
        if (!(u.order().poly() == f)) throw Error(Errc::InvalidArgument, "units from different orders");
        if (!is_unit(u)) throw Error(Errc::NotAUnit, "element " + u.str() + " has norm " + u.norm().get_str());
    }
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (is_torsion(units[i])) {
            res.verdict = Independence::Dependent;
            res.relation.assign(units.size(), 0);
            res.relation[i] = 1;
            res.note = "unit " + std::to_string(i) + " is torsion";
            return res;
        }
    }
    auto real_iso = real_roots(f);
    int r1 = static_cast<int>(real_iso.size());
    int r2 = (f.degree() - r1) / 2;
    int rank = r1 + r2 - 1;
    for (const auto& iv : real_iso) res.real_root_intervals.emplace_back(iv.lo.get_str(), iv.hi.get_str());
    if (static_cast<int>(units.size()) > rank) {
        res.verdict = Independence::Dependent;
        res.note = "more units than the unit rank " + std::to_string(rank);
        return res;
    }
    auto approx = durand_kerner(f);
    std::vector<std::vector<int>> subsets;
    column_subsets(r1 + r2, static_cast<int>(units.size()), subsets);
    bool searched = false;
    for (unsigned bits = opt.start_bits; bits <= opt.max_bits; bits *= 2) {
        auto roots = enclose_roots(f, real_iso, approx, bits);
        if (!roots) continue;
        auto m = log_matrix(units, *roots);
        if (!m) continue;
        for (const auto& cols : subsets) {
            Ival d = leibniz(*m, cols);
            if (!d.has_zero()) {
                res.verdict = Independence::Independent;
                res.precision_bits = bits;
                res.minor_columns = cols;
                res.minor_lo = mp_str(d.lo);
                res.minor_hi = mp_str(d.hi);
                return res;
            }
        }
        if (!searched && units.size() <= opt.relation_max_units) {
            searched = true;
            std::vector<std::vector<long double>> logs;
            for (const auto& row : *m) {
                logs.emplace_back();
                for (const auto& x : row) logs.back().push_back(midpoint(x));
            }
            if (auto rel = search_relation(units, logs, opt.relation_bound)) {
                res.verdict = Independence::Dependent;
                res.precision_bits = bits;
                res.relation = *rel;
                res.note = "exact relation found";
                return res;
            }
        }
    }
    res.verdict = Independence::Inconclusive;
    res.precision_bits = opt.max_bits;
    res.note = "no certifying minor up to the precision cap";
    return res;
}

}  // namespace leo::nt
