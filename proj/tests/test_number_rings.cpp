#include <memory>
#include <random>

#include "doctest.h"
#include "leo/error.hpp"
#include "leo/factor.hpp"
#include "leo/int_lattice.hpp"
#include "leo/order.hpp"
#include "leo/sturm.hpp"
#include "leo/units.hpp"
#include "oracles/nt_oracles.hpp"

using namespace leo::nt;

namespace {

IntPoly cubic(long t) { return IntPoly({-1, -t * t, 0, 1}); }
IntPoly quartic(long t) { return IntPoly({1, t, -1, -t, 1}); }

std::shared_ptr<const MonogenicOrder> order_of(const IntPoly& f) { return std::make_shared<const MonogenicOrder>(f); }

OrderElem lin(const std::shared_ptr<const MonogenicOrder>& o, long a) {
    return OrderElem::from_poly(o, IntPoly({a, 1}));
}

}  // namespace

TEST_CASE("parsing and printing") {
    CHECK(parse_poly("x^3-4*x-1") == IntPoly({-1, -4, 0, 1}));
    CHECK(parse_poly("x^3 - 4x - 1") == IntPoly({-1, -4, 0, 1}));
    CHECK(parse_poly("[-1,-4,0,1]") == IntPoly({-1, -4, 0, 1}));
    CHECK(parse_poly("-y^2+y") == IntPoly({0, 1, -1}));
    CHECK(parse_poly(IntPoly({-1, -4, 0, 1}).str()) == IntPoly({-1, -4, 0, 1}));
    CHECK_THROWS_AS(parse_poly("x^"), leo::Error);
    CHECK_THROWS_AS(parse_poly("x+y"), leo::Error);
}

TEST_CASE("discriminants of the family polynomials") {
    CHECK(discriminant(cubic(2)) == 229);
    CHECK(discriminant(quartic(7)) == 81 * 125 * 41);
    for (long t = 2; t <= 50; ++t) {
        mpz_class t6 = pow_int(t, 6);
        CHECK(discriminant(cubic(t)) == 4 * t6 - 27);
    }
    for (long t = 7; t <= 50; ++t) {
        mpz_class a = t * t - 4;
        CHECK(discriminant(quartic(t)) == a * a * (4 * t * t + 9));
    }
}

TEST_CASE("discriminant agrees with the trace form on random monic polynomials") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-9, 9), degd(2, 6);
    for (int trial = 0; trial < 60; ++trial) {
        int n = degd(rng);
        std::vector<mpz_class> c(n + 1);
        for (int i = 0; i < n; ++i) c[i] = coef(rng);
        c[n] = 1;
        CHECK(discriminant(IntPoly(c)) == oracle::trace_form_disc(c));
    }
}

TEST_CASE("gcd and squarefree decomposition") {
    IntPoly a({-1, 1}), b({1, 0, 1}), c({3, 2});
    IntPoly f = a * a * a * b * c;
    auto yun = yun_decomposition(f);
    REQUIRE(yun.size() == 3);
    CHECK(yun[0] == (b * c).primitive());
    CHECK(yun[1] == IntPoly::constant(1));
    CHECK(yun[2] == a);
    CHECK(gcd_q(a * b, b * c) == b);
    CHECK(!squarefree(f));
    CHECK(squarefree(b * c));
}

TEST_CASE("irreducibility") {
    CHECK(irreducible_over_q(parse_poly("x^4+1")));
    CHECK(!irreducible_over_q(parse_poly("x^4-1")));
    CHECK(irreducible_over_q(parse_poly("x^5-16x+1")));
    CHECK(!irreducible_over_q(parse_poly("x^4+4")));  // (x^2+2x+2)(x^2-2x+2)
    for (long t = 2; t <= 30; ++t) CHECK(irreducible_over_q(cubic(t)));
    for (long t = 7; t <= 30; ++t) CHECK(irreducible_over_q(quartic(t)));
    CHECK(irreducible_over_q(parse_poly("2x^3-3")));
    CHECK(!irreducible_over_q(parse_poly("6x^2+5x+1")));
}

TEST_CASE("products of random factors are always split") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> coef(-6, 6), degd(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        auto rnd = [&] {
            int n = degd(rng);
            std::vector<mpz_class> c(n + 1);
            for (int i = 0; i < n; ++i) c[i] = coef(rng);
            c[n] = 1;
            return IntPoly(c);
        };
        IntPoly g = rnd(), h = rnd();
        IntPoly f = g * h;
        auto fac = find_factor(f);
        REQUIRE_MESSAGE(fac.has_value(), f.str());
        CHECK(fac->degree() > 0);
        CHECK(fac->degree() < f.degree());
        CHECK(divides(*fac, f));
    }
}

TEST_CASE("real roots isolate square roots exactly") {
    // (x^2-2)(x^2-3)(x-1): roots -sqrt3 < -sqrt2 < 1 < sqrt2 < sqrt3
    IntPoly f = IntPoly({-2, 0, 1}) * IntPoly({-3, 0, 1}) * IntPoly({-1, 1});
    auto roots = real_roots(f);
    REQUIRE(roots.size() == 5);
    std::vector<int> sq{-3, -2, 1, 2, 3};
    for (std::size_t i = 0; i < 5; ++i) {
        auto iv = refine(f, roots[i], 40);
        if (sq[i] == 1) {
            CHECK(iv.exact());
            CHECK(iv.lo == 1);
            continue;
        }
        int k = std::abs(sq[i]);
        CHECK(iv.lo * iv.lo != k);
        if (sq[i] > 0) {
            CHECK(iv.lo * iv.lo < k);
            CHECK(iv.hi * iv.hi > k);
        } else {
            CHECK(iv.lo * iv.lo > k);
            CHECK(iv.hi * iv.hi < k);
        }
        CHECK(iv.hi - iv.lo <= mpq_class(1, 1UL << 40));
    }
}

TEST_CASE("signatures") {
    for (long t = 2; t <= 20; ++t) {
        auto s = signature(cubic(t));
        CHECK(s.r1 == 3);
        CHECK(s.r2 == 0);
    }
    CHECK(signature(quartic(7)).r1 == 4);
    CHECK(signature(parse_poly("x^3-2")).r1 == 1);
    CHECK(signature(parse_poly("x^4+1")).r2 == 2);
    CHECK(signature(parse_poly("x^5-16x+1")).r1 == 3);
}

TEST_CASE("order arithmetic and modular powers") {
    auto o = order_of(cubic(10));
    auto u = lin(o, 10);
    auto c = u.pow_mod(3, 125);
    CHECK(c.coords() == std::vector<mpz_class>{1, 25, 30});
    CHECK(u.norm() == 1);  // (-1)^3 f(-10)
    auto lam = OrderElem::gen(o);
    CHECK(lam.norm() == 1);
    CHECK((lam * lam.inverse()).is_one());
    CHECK((u * u.inverse()).is_one());
    CHECK_THROWS_AS(lin(o, 2).inverse(), leo::Error);

    std::mt19937 rng(5);
    std::uniform_int_distribution<int> ed(-40, 40), md(2, 300);
    for (int trial = 0; trial < 50; ++trial) {
        mpz_class e = ed(rng), f = ed(rng), m = md(rng);
        auto a = u.pow_mod(e, m), b = u.pow_mod(f, m);
        CHECK(a == u.pow(e).reduced(m));
        CHECK((a * b).reduced(m) == u.pow_mod(e + f, m));
    }
}

TEST_CASE("order construction rejects reducible polynomials") {
    CHECK_THROWS_AS(MonogenicOrder(parse_poly("x^4-1")), leo::Error);
    CHECK_THROWS_AS(MonogenicOrder(parse_poly("2x^2+1")), leo::Error);
}

TEST_CASE("lattice HNF is invariant under unimodular changes") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> val(-12, 12);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<IntVec> gens(3, IntVec(3));
        for (auto& r : gens)
            for (auto& x : r) x = val(rng);
        mpz_class det = oracle::cofactor_det({gens[0], gens[1], gens[2]});
        if (det == 0) continue;
        auto l = IntLattice::from_generators(gens, 3);
        CHECK(l.rank() == 3);
        CHECK(l.determinant() == abs(det));
        for (const auto& g : gens) CHECK(l.contains(g));
        // random elementary operations
        auto g2 = gens;
        for (int k = 0; k < 10; ++k) {
            int i = rng() % 3, j = rng() % 3;
            if (i == j) continue;
            int k2 = val(rng) % 3;
            for (int c = 0; c < 3; ++c) g2[i][c] += k2 * g2[j][c];
        }
        std::swap(g2[0], g2[2]);
        CHECK(IntLattice::from_generators(g2, 3) == l);
        auto full = IntLattice::full(3);
        CHECK(full.index_of(l) == abs(det));
        CHECK(l.scaled(5).subset_of(l));
        CHECK(l.index_of(l.scaled(5)) == 125);
        IntVec v{val(rng), val(rng), val(rng)};
        // membership oracle: v in L iff det * L^{-1} v is divisible by det, checked via Cramer
        std::vector<std::vector<mpz_class>> m{gens[0], gens[1], gens[2]};
        bool in = true;
        for (int col = 0; col < 3; ++col) {
            auto mc = m;
            for (int row = 0; row < 3; ++row) mc[row] = m[row];
            // solve x * M = v: replace row col with v
            mc[col] = v;
            mpz_class num = oracle::cofactor_det(mc);
            if (!mpz_divisible_p(num.get_mpz_t(), det.get_mpz_t())) in = false;
        }
        CHECK(l.contains(v) == in);
    }
}

TEST_CASE("left kernel modulo p") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::uint64_t p = (trial % 2) ? 5 : 7;
        std::vector<std::vector<std::uint64_t>> m(4, std::vector<std::uint64_t>(3));
        for (auto& r : m)
            for (auto& x : r) x = rng() % p;
        auto ker = left_kernel_mod_p(m, p);
        CHECK(ker.size() + rank_mod_p(m, p) == 4);
        for (const auto& c : ker)
            for (std::size_t j = 0; j < 3; ++j) {
                std::uint64_t s = 0;
                for (std::size_t i = 0; i < 4; ++i) s += c[i] * m[i][j];
                CHECK(s % p == 0);
            }
    }
}

TEST_CASE("cubic family units are independent") {
    for (long t = 2; t <= 50; ++t) {
        auto o = order_of(cubic(t));
        auto r = units_independent({OrderElem::gen(o), lin(o, t)});
        CHECK_MESSAGE(r.verdict == Independence::Independent, "t = " << t);
    }
}

TEST_CASE("quartic family units are independent") {
    for (long t = 7; t <= 30; ++t) {
        auto o = order_of(quartic(t));
        auto r = units_independent({lin(o, -1), OrderElem::gen(o), lin(o, 1)});
        CHECK_MESSAGE(r.verdict == Independence::Independent, "t = " << t);
    }
}

TEST_CASE("dependent systems are never certified") {
    auto o = order_of(quartic(7));
    auto u = OrderElem::gen(o), v = lin(o, 1);
    CHECK(units_independent({u, u.inverse()}).verdict == Independence::Dependent);
    CHECK(units_independent({u, u, u * u * u}).verdict == Independence::Dependent);
    CHECK(units_independent({u, v, u * u * v}).verdict == Independence::Dependent);
    CHECK(units_independent({u, v.pow(2), u.pow(3) * v.pow(-4)}).verdict == Independence::Dependent);
    CHECK(units_independent({OrderElem::one(o)}).verdict == Independence::Dependent);
    auto neg = OrderElem::one(o) - OrderElem::one(o) - OrderElem::one(o);
    CHECK(units_independent({neg, u}).verdict == Independence::Dependent);
    auto oc = order_of(cubic(10));
    auto w = OrderElem::gen(oc);
    CHECK(units_independent({w, lin(oc, 10), w * lin(oc, 10)}).verdict == Independence::Dependent);
    CHECK_THROWS_AS(units_independent({lin(oc, 2)}), leo::Error);
}

TEST_CASE("fields with complex places") {
    // x^3 - 2 has rank 1 with unit 1 + cbrt2 + cbrt4 (inverse of cbrt2 - 1)
    auto o = order_of(parse_poly("x^3-2"));
    auto e = lin(o, -1);
    CHECK(is_unit(e));
    CHECK(units_independent({e}).verdict == Independence::Independent);
    // x^5 - x - 1: r1 = 1, r2 = 2, and x - 1 has norm -f(1) = 1
    auto q = order_of(parse_poly("x^5-x-1"));
    auto x = OrderElem::gen(q);
    auto y = lin(q, -1);
    CHECK(units_independent({x, lin(q, 1)}).verdict == Independence::Dependent);  // x + 1 = x^5
    REQUIRE(is_unit(x));
    REQUIRE(is_unit(y));
    auto r = units_independent({x, y});
    CHECK(r.verdict == Independence::Independent);
    CHECK(unit_rank(*q) == 2);
}
