#include <set>
#include <memory>
#include <random>

#include "doctest.h"
#include "leo/error.hpp"
#include "leo/families.hpp"
#include "leo/leopoldt_bs.hpp"
#include "oracles/nt_oracles.hpp"

using namespace leo;
using namespace leo::bs;
using nt::IntPoly;
using nt::OrderElem;

namespace {

struct CubicMember {
    std::shared_ptr<const nt::MonogenicOrder> order;
    std::vector<OrderElem> units;
};

CubicMember cubic(long t) {
    auto m = families::family_member(families::preset("cubic_s3"), t);
    return {m.order, m.units};
}

unsigned vp(long t, unsigned long p) {
    unsigned v = 0;
    while (t % static_cast<long>(p) == 0) {
        t /= static_cast<long>(p);
        ++v;
    }
    return v;
}

// |(Z[x]/(p, f))^*| by enumerating residues and testing the norm mod p.
long unit_group_order_mod_p(const nt::MonogenicOrder& o, unsigned long p) {
    int n = o.degree();
    long total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<long>(p);
    long count = 0;
    for (long code = 0; code < total; ++code) {
        std::vector<mpz_class> c(n);
        long x = code;
        for (int i = 0; i < n; ++i) {
            c[i] = x % static_cast<long>(p);
            x /= static_cast<long>(p);
        }
        mpz_class r = nt::resultant(o.poly(), IntPoly(c));
        if (!mpz_divisible_ui_p(r.get_mpz_t(), p)) ++count;
    }
    return count;
}

const LeopoldtCertificate& as_leo(const VerifyOutcome& o) {
    REQUIRE(std::holds_alternative<LeopoldtCertificate>(o));
    return std::get<LeopoldtCertificate>(o);
}

}  // namespace

TEST_CASE("prepower exponents") {
    auto c = cubic(10);
    auto sys = build_unit_system(c.order, c.units, 5);
    long group = unit_group_order_mod_p(*c.order, 5);
    CHECK(group == 96);
    for (const auto& k : sys.prepower) CHECK(group % k.get_si() == 0);
    CHECK(sys.q == 5);

    auto paper = build_unit_system(c.order, c.units, 5, {std::vector<mpz_class>{3, 30}, false});
    CHECK(paper.prepower == std::vector<mpz_class>{3, 30});
    CHECK_THROWS_AS(build_unit_system(c.order, c.units, 5, {std::vector<mpz_class>{2, 30}, false}), Error);

    auto two = build_unit_system(c.order, c.units, 2);
    CHECK(two.q == 4);
    for (std::size_t i = 0; i < two.rank(); ++i) CHECK(two.generators[i].pow_mod(two.prepower[i], 4).congruent_one(4));

    CHECK_THROWS_AS(build_unit_system(c.order, {OrderElem::one(c.order)}, 5), Error);
    CHECK_THROWS_AS(build_unit_system(c.order, c.units, 6), Error);
    auto nonunit = OrderElem::from_poly(c.order, IntPoly({2, 1}));
    try {
        build_unit_system(c.order, {nonunit}, 5);
        FAIL("expected NotAUnit");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotAUnit);
    }
}

TEST_CASE("phi images at t = 10, p = 5") {
    auto c = cubic(10);
    auto sys = build_unit_system(c.order, c.units, 5, {std::vector<mpz_class>{3, 30}, false});
    CHECK(phi_image(sys, {1, 0}, 2) == std::vector<std::uint64_t>{0, 4, 0});
    CHECK(phi_image(sys, {0, 1}, 2) == std::vector<std::uint64_t>{0, 0, 2});
    // both prepowered units are 1 mod 25, so phi_1 vanishes and L_2 = L_1
    Filtration f = start_filtration(sys);
    filtration_step(sys, f);
    CHECK(f.levels[0].phi == FpMatrix{{0, 0, 0}, {0, 0, 0}});
    CHECK(f.levels[1].lattice == f.levels[0].lattice);
    try {
        phi_image(sys, {1, 0}, 3);
        FAIL("expected FiltrationInvariantBroken");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::FiltrationInvariantBroken);
    }
}

TEST_CASE("phi images match the closed form when p exactly divides t") {
    int checked = 0;
    for (long t = 2; t <= 60; ++t) {
        for (unsigned long p : {5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL}) {
            if (vp(t, p) != 1) continue;
            auto c = cubic(t);
            auto sys = build_unit_system(c.order, c.units, p, {std::vector<mpz_class>{3, 3 * t}, true});
            long pp = static_cast<long>(p * p);
            long a = (t * t / pp) % static_cast<long>(p), b = (3 * t * t / pp) % static_cast<long>(p);
            // t^2 / p^2 is an integer since p || t
            CHECK(phi_image(sys, {1, 0}, 2) == std::vector<std::uint64_t>{0, static_cast<std::uint64_t>(a), 0});
            CHECK(phi_image(sys, {0, 1}, 2) == std::vector<std::uint64_t>{0, 0, static_cast<std::uint64_t>(b)});
            ++checked;
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("phi images at p = 2 pick up the binomial term") {
    // (1 + tA)^t with A = 3L^2 + 4tL + t^2: the C(t,2) t^2 A^2 term survives mod 8
    for (long t = 2; t <= 62; t += 4) {
        auto c = cubic(t);
        auto sys = build_unit_system(c.order, c.units, 2, {std::vector<mpz_class>{3, 3 * t}, true});
        CHECK(phi_image(sys, {1, 0}, 2) == std::vector<std::uint64_t>{0, 1, 0});
        CHECK(phi_image(sys, {0, 1}, 2) == std::vector<std::uint64_t>{0, 1, 1});
    }
}

TEST_CASE("cubic family certificates") {
    std::vector<std::pair<long, unsigned long>> pairs{{10, 2}, {10, 5}, {14, 2}, {14, 7}, {25, 5}, {12, 2}};
    for (auto [t, p] : pairs) {
        auto c = cubic(t);
        auto sys = build_unit_system(c.order, c.units, p);
        Filtration filt;
        auto out = bs_verify(sys, {}, filt);
        const auto& cert = as_leo(out);
        CHECK(cert.body.m <= 2 * vp(t, p) + 1);
        CHECK(evaluate_conditions(filt, cert.body.m, 2).all());
        for (unsigned m = base_level(p) + 1; m < cert.body.m; ++m) CHECK(!evaluate_conditions(filt, m, 2).any());
        CHECK(recheck(cert).ok);
        std::string js = to_json(cert);
        auto back = certificate_from_json(js);
        REQUIRE(std::holds_alternative<LeopoldtCertificate>(back));
        CHECK(to_json(std::get<LeopoldtCertificate>(back)) == js);
    }
}

TEST_CASE("tampered certificates fail recheck") {
    auto c = cubic(10);
    auto cert = as_leo(bs_verify(build_unit_system(c.order, c.units, 5)));
    auto bad = cert;
    bad.body.witness.phi[0][1] = (bad.body.witness.phi[0][1] + 1) % 5;
    CHECK(!recheck(bad).ok);
    bad = cert;
    bad.body.m += 1;
    CHECK(!recheck(bad).ok);
    bad = cert;
    bad.body.p_maximality = "user-asserted";
    CHECK(!recheck(bad).ok);
    CHECK(!recheck(ZpIndependenceCertificate{cert.body, 2}).ok);
}

TEST_CASE("partial rank gives only a Zp certificate") {
    auto c = cubic(10);
    auto sys = build_unit_system(c.order, {c.units[0]}, 5);
    try {
        bs_verify(sys);
        FAIL("expected RankMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::RankMismatch);
    }
    VerifyOptions opt;
    opt.partial_rank_waiver = true;
    auto out = bs_verify(sys, opt);
    CHECK(!std::holds_alternative<LeopoldtCertificate>(out));
    REQUIRE(std::holds_alternative<ZpIndependenceCertificate>(out));
    const auto& zp = std::get<ZpIndependenceCertificate>(out);
    CHECK(zp.unit_rank == 2);
    CHECK(recheck(zp).ok);
    auto back = certificate_from_json(to_json(zp));
    CHECK(std::holds_alternative<ZpIndependenceCertificate>(back));
}

TEST_CASE("quartic family at t = 7") {
    auto spec = families::preset("nakamula_d8");
    auto m = families::family_member(spec, 7);
    for (unsigned long p : {2UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL}) {
        auto out = bs_verify(build_unit_system(m.order, m.units, p));
        CHECK_MESSAGE(std::holds_alternative<LeopoldtCertificate>(out), "p = " << p);
    }
    for (unsigned long p : {3UL, 5UL}) {
        try {
            bs_verify(build_unit_system(m.order, m.units, p));
            FAIL("expected NotPMaximal");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::NotPMaximal);
        }
        VerifyOptions opt;
        opt.assume_p_maximal = true;
        CHECK_NOTHROW(bs_verify(build_unit_system(m.order, m.units, p), opt));
    }
}

TEST_CASE("randomised filtration invariants") {
    std::mt19937 rng(2024);
    const std::vector<std::pair<long, unsigned long>> base{{10, 2}, {10, 5}, {14, 7}, {12, 2}, {15, 5}, {22, 11}, {21, 7}};
    for (int trial = 0; trial < 50; ++trial) {
        auto [t, p] = base[rng() % base.size()];
        auto c = cubic(t);
        auto sys0 = build_unit_system(c.order, c.units, p);
        std::vector<mpz_class> pre = sys0.prepower;
        for (auto& k : pre) k *= 1 + rng() % 4;
        auto sys = build_unit_system(c.order, c.units, p, {pre, true});
        Filtration filt;
        auto out = bs_verify(sys, {}, filt);
        for (std::size_t i = 0; i + 1 < filt.levels.size(); ++i) {
            const auto& a = filt.levels[i].lattice;
            const auto& b = filt.levels[i + 1].lattice;
            CHECK(b.subset_of(a));
            CHECK(a.scaled(p).subset_of(b));
            // index via cofactor determinants of the bases
            mpz_class da = abs(oracle::cofactor_det(a.basis())), db = abs(oracle::cofactor_det(b.basis()));
            mpz_class pr;
            mpz_ui_pow_ui(pr.get_mpz_t(), p, nt::rank_mod_p(filt.levels[i].phi, p));
            CHECK(db == da * pr);
        }
        const auto& cert = as_leo(out);
        std::string js = to_json(cert);
        CHECK(to_json(std::get<LeopoldtCertificate>(certificate_from_json(js))) == js);
        CHECK(recheck(cert).ok);
    }
}

TEST_CASE("transfer along congruence classes") {
    auto spec = families::preset("cubic_s3");
    auto c = cubic(10);
    auto cert = as_leo(bs_verify(build_unit_system(c.order, c.units, 2)));
    auto fc = bs_transfer(spec, 10, 2, cert);
    CHECK(fc.modulus == mpz_class(1) << cert.body.m);
    CHECK(fc.reduced_units.size() == 2);
    verify_members(spec, fc, 3);
    REQUIRE(fc.members.size() == 3);
    for (const auto& m : fc.members) {
        CHECK_MESSAGE(m.ok, m.t.get_str() << ": " << m.detail);
        CHECK(m.m <= fc.m);
        CHECK((m.t - 10) % fc.modulus == 0);
    }

    auto c5 = cubic(10);
    CHECK(nt::discriminant(c5.order->poly()) == 3999973);
    auto fc5 = bs_transfer(spec, 10, 5, as_leo(bs_verify(build_unit_system(c5.order, c5.units, 5))));
    CHECK(fc5.modulus == 125);

    auto ext = bs_transfer_external(spec, 2, 3, 3, "cited computation");
    CHECK(ext.modulus == 27);
    CHECK(ext.anchor == "cited computation");

    try {
        bs_transfer_external(families::preset("nakamula_d8"), 7, 3, 2, "cited");
        FAIL("expected DiscriminantObstruction");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DiscriminantObstruction);
    }
    // a certificate for another member is refused
    auto c14 = cubic(14);
    auto other = as_leo(bs_verify(build_unit_system(c14.order, c14.units, 2)));
    CHECK_THROWS_AS(bs_transfer(spec, 10, 2, other), Error);
}

TEST_CASE("odd valuation primes") {
    IntPoly g({-27, 0, 0, 0, 0, 0, 4});
    auto found = odd_valuation_primes(g, 2, 2, 10000, 10);
    CHECK(found.size() == 10);
    std::set<mpz_class> primes;
    for (const auto& o : found) {
        CHECK(mpz_probab_prime_p(o.prime.get_mpz_t(), 30) > 0);
        CHECK(o.k % 2 == 0);
        CHECK(o.k <= 10000);
        mpz_class v = g.eval(o.k);
        unsigned long e = mpz_remove(v.get_mpz_t(), v.get_mpz_t(), o.prime.get_mpz_t());
        CHECK(e == o.valuation);
        CHECK(e % 2 == 1);
        primes.insert(o.prime);
    }
    CHECK(primes.size() == 10);

    IntPoly sq = IntPoly({1, 0, 1}) * IntPoly({1, 0, 1});
    try {
        odd_valuation_primes(sq, 1, 0, 100, 1);
        FAIL("expected PolynomialIsSquare");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PolynomialIsSquare);
    }

    IntPoly a({-4, 0, 1});
    IntPoly nk = a * a * IntPoly({9, 0, 4});
    for (const auto& o : odd_valuation_primes(nk, 1, 7, 2000, 8)) {
        mpz_class w = 4 * o.k * o.k + 9;
        CHECK(mpz_divisible_p(w.get_mpz_t(), o.prime.get_mpz_t()));
    }
    CHECK_THROWS_AS(odd_valuation_primes(g, 2, 2, 4, 50), Error);
}

TEST_CASE("infinitude reports") {
    auto check = [](const InfinitudeReport& r, const families::FamilySpec& spec) {
        for (std::size_t i = 0; i < r.members.size(); ++i) {
            CHECK((r.members[i].t - r.t0) % r.modulus == 0);
            for (std::size_t j = 0; j < r.members.size(); ++j) {
                if (i == j) continue;
                CHECK(r.members[i].t != r.members[j].t);
                mpz_class dj = spec.disc_poly.eval(r.members[j].t);
                CHECK(!mpz_divisible_p(dj.get_mpz_t(), r.members[i].prime.get_mpz_t()));
            }
        }
    };
    auto cub = families::preset("cubic_s3");
    auto r = infinitude_certificate(cub, 0, 10, 5);
    CHECK(r.members.size() == 5);
    check(r, cub);
    auto quart = families::preset("nakamula_d8");
    auto q = infinitude_certificate(quart, 7, 4, 5);
    CHECK(q.members.size() == 5);
    check(q, quart);
}
