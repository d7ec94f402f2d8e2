#include <set>
#include <algorithm>
#include <memory>
#include <random>

#include "doctest.h"
#include "leo/error.hpp"
#include "leo/group_algebra.hpp"
#include "oracles/algebra_oracles.hpp"

using namespace leo::groups;
using namespace leo::algebra;
using leo::QMatrix;

namespace {

std::shared_ptr<const PermGroup> make(const std::string& ref) {
    return std::make_shared<const PermGroup>(parse_group_ref(ref));
}

std::size_t by_label(const SubgroupLattice& lat, const std::string& label) {
    auto c = lat.class_by_label(label);
    REQUIRE(c.has_value());
    return lat.class_rep(*c);
}

std::vector<std::size_t> subgroups_of_order(const SubgroupLattice& lat, std::size_t order) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < lat.size(); ++i)
        if (lat.subgroup(i).order() == order) out.push_back(i);
    return out;
}

// Kernels of the irreducible characters of an abelian group: the subgroups
// with cyclic quotient.
std::vector<std::size_t> abelian_kernels(const SubgroupLattice& lat) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < lat.size(); ++i)
        if (lat.quotient_cyclic(i)) out.push_back(i);
    return out;
}

oracle::Dense to_dense(const PermGroup& g, const AlgebraElement& a) {
    oracle::Dense d(g.order());
    for (const auto& [x, c] : a.terms()) d[x] = c;
    return d;
}

const char* kTestGroups[] = {"C2", "S3", "V4", "D8", "Q8", "A4", "C2xC4", "Aff(5)", "S4"};

}  // namespace

TEST_CASE("idempotent basics") {
    auto c2 = make("C2");
    SubgroupLattice lat(c2);
    CHECK(idempotent(lat, lat.trivial()) == AlgebraElement::one());
    auto e = idempotent(lat, lat.whole());
    CHECK(e.coeff(0) == mpq_class(1, 2));
    CHECK(e.coeff(1) == mpq_class(1, 2));
    CHECK(e.terms().size() == 2);

    AlgebraElement a = AlgebraElement::term(1, 3);
    a.add(1, -3);
    CHECK(a.is_zero());
}

TEST_CASE("idempotents square to themselves and absorb") {
    for (const auto* ref : kTestGroups) {
        auto g = make(ref);
        SubgroupLattice lat(g);
        auto eg = idempotent(lat, lat.whole());
        for (std::size_t h = 0; h < lat.size(); ++h) {
            auto e = idempotent(lat, h);
            CHECK(multiply(*g, e, e) == e);
            CHECK(to_dense(*g, multiply(*g, e, e)) == oracle::dense_mul(*g, to_dense(*g, e), to_dense(*g, e)));
            if (lat.is_normal(h)) CHECK(multiply(*g, e, eg) == eg);
        }
    }
}

TEST_CASE("conjugating an idempotent gives the conjugate subgroup's idempotent") {
    std::mt19937 rng(1234);
    for (const auto* ref : kTestGroups) {
        auto g = make(ref);
        SubgroupLattice lat(g);
        std::uniform_int_distribution<std::size_t> ph(0, lat.size() - 1);
        std::uniform_int_distribution<ElementId> px(0, static_cast<ElementId>(g->order() - 1));
        for (int i = 0; i < 50; ++i) {
            std::size_t h = ph(rng);
            ElementId x = px(rng);
            auto lhs = multiply(*g, multiply(*g, AlgebraElement::term(x, 1), idempotent(lat, h)),
                                AlgebraElement::term(g->inv(x), 1));
            CHECK(lhs == idempotent(lat, lat.conjugate(h, x)));
            CHECK(lhs == conjugate(*g, x, idempotent(lat, h)));
        }
    }
}

TEST_CASE("verify_relation on trivial cases") {
    auto c2 = make("C2");
    SubgroupLattice lat(c2);
    CHECK_FALSE(verify_relation(lat, make_relation({{lat.whole(), 1}})));
    CHECK(verify_relation(lat, make_relation({})));
    CHECK(make_relation({{0, 1}, {0, -1}}).terms.empty());
    CHECK(make_relation({{0, 2}, {1, 1}}).kind == RelationKind::Useful);
    CHECK(make_relation({{1, 1}}).kind == RelationKind::Plain);
    CHECK_THROWS_AS(make_generalised({{0, 1}}), leo::Error);
}

TEST_CASE("Frobenius relation for S3") {
    auto g = make("S3");
    SubgroupLattice lat(g);
    auto fs = frobenius_structure(lat);
    REQUIRE(fs);
    auto rel = frobenius_relation(lat, *fs);
    CHECK(rel.kind == RelationKind::Useful);
    CHECK(verify_relation(lat, rel));
    // 1 = e_C3 + (2/3) sum e_C2 - 2 e_S3
    CHECK(rel.coeff(lat.trivial()) == -1);
    CHECK(rel.coeff(by_label(lat, "C3")) == 1);
    CHECK(rel.coeff(lat.whole()) == -2);
    for (auto h : subgroups_of_order(lat, 2)) CHECK(rel.coeff(h) == mpq_class(2, 3));
    // identity coefficient of the expansion: 1/3 + 3*(2/3)*(1/2) - 2/6 = 1
    auto e = expand(lat, make_relation({{by_label(lat, "C3"), 1},
                                       {subgroups_of_order(lat, 2)[0], mpq_class(2, 3)},
                                       {subgroups_of_order(lat, 2)[1], mpq_class(2, 3)},
                                       {subgroups_of_order(lat, 2)[2], mpq_class(2, 3)},
                                       {lat.whole(), -2}}));
    CHECK(e == AlgebraElement::one());
}

TEST_CASE("Frobenius relations for A4 and Aff(5)") {
    {
        auto g = make("A4");
        SubgroupLattice lat(g);
        auto rel = frobenius_relation(lat, *frobenius_structure(lat));
        CHECK(verify_relation(lat, rel));
        CHECK(rel.coeff(by_label(lat, "V4")) == 1);
        CHECK(rel.coeff(lat.whole()) == -3);
        for (auto h : subgroups_of_order(lat, 3)) CHECK(rel.coeff(h) == mpq_class(3, 4));
    }
    {
        auto g = make("Aff(5)");
        SubgroupLattice lat(g);
        auto fs = *frobenius_structure(lat);
        CHECK(lat.subgroup(fs.complement).order() == 4);
        CHECK(lat.subgroup(fs.kernel).order() == 5);
        auto rel = frobenius_relation(lat, fs);
        CHECK(verify_relation(lat, rel));
        CHECK(rel.coeff(lat.whole()) == -4);
        for (auto h : lat.class_members(lat.class_of(fs.complement))) CHECK(rel.coeff(h) == mpq_class(4, 5));
    }
}

TEST_CASE("Frobenius relation verifies for every Frobenius preset") {
    for (const auto* ref : {"S3", "A4", "D10", "D14", "Aff(5)", "Aff(7)", "Aff(8)", "Aff(9)", "Aff(11)", "D18", "D22"}) {
        auto g = make(ref);
        SubgroupLattice lat(g);
        auto fs = frobenius_structure(lat);
        REQUIRE_MESSAGE(fs.has_value(), ref);
        CHECK_MESSAGE(verify_relation(lat, frobenius_relation(lat, *fs)), ref);
    }
}

TEST_CASE("cover relations") {
    SUBCASE("S3 cover matches three times the Frobenius relation") {
        auto g = make("S3");
        SubgroupLattice lat(g);
        std::vector<std::size_t> cover = subgroups_of_order(lat, 2);
        cover.push_back(by_label(lat, "C3"));
        auto rel = cover_relation(lat, cover);
        CHECK(rel.kind == RelationKind::Useful);
        CHECK(verify_relation(lat, rel));
        auto r = proportional(rel, frobenius_relation(lat, *frobenius_structure(lat)));
        REQUIRE(r);
        CHECK(*r == 3);
    }
    SUBCASE("V4 cover is the partition relation with t = 3") {
        auto g = make("V4");
        SubgroupLattice lat(g);
        auto c2s = subgroups_of_order(lat, 2);
        auto rel = cover_relation(lat, c2s);
        CHECK(rel.coeff(lat.whole()) == -4);
        CHECK(rel.coeff(lat.trivial()) == -2);
        for (auto h : c2s) CHECK(rel.coeff(h) == 2);
        CHECK(verify_relation(lat, rel));
        auto part = partition_relation(lat, c2s);
        CHECK(part.terms == rel.terms);
    }
    SUBCASE("cover by G alone is a tautology") {
        auto g = make("D8");
        SubgroupLattice lat(g);
        auto rel = cover_relation(lat, {lat.whole()});
        CHECK(rel.terms.empty());
        CHECK(rel.kind == RelationKind::Plain);
    }
    SUBCASE("non-cover rejected") {
        auto g = make("S3");
        SubgroupLattice lat(g);
        try {
            cover_relation(lat, subgroups_of_order(lat, 2));
            FAIL("expected NotACover");
        } catch (const leo::Error& e) {
            CHECK(e.code() == leo::Errc::NotACover);
        }
    }
}

TEST_CASE("random covers always verify") {
    std::mt19937 rng(42);
    for (const auto* ref : {"S3", "D8", "Q8", "A4", "C2xC4", "S4", "Aff(5)"}) {
        auto g = make(ref);
        SubgroupLattice lat(g);
        // cyclic subgroups cover G; add random extra subgroups
        std::vector<std::size_t> cyclic;
        for (std::size_t i = 0; i < lat.size(); ++i)
            if (lat.is_cyclic(i) && i != lat.whole()) cyclic.push_back(i);
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<std::size_t> cover;
            for (ElementId x = 0; x < g->order(); ++x) {
                std::size_t c = lat.generated_by({x});
                std::vector<std::size_t> above;
                for (std::size_t i = 0; i < lat.size(); ++i)
                    if (lat.leq(c, i)) above.push_back(i);
                cover.push_back(above[std::uniform_int_distribution<std::size_t>(0, above.size() - 1)(rng)]);
            }
            std::sort(cover.begin(), cover.end());
            cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
            if (cover.size() > 14) cover.resize(14);  // keeps oracle work bounded
            bool covers = true;
            for (ElementId x = 0; x < g->order() && covers; ++x)
                covers = std::any_of(cover.begin(), cover.end(), [&](std::size_t h) { return lat.subgroup(h).contains(x); });
            if (!covers) continue;
            CHECK_MESSAGE(verify_relation(lat, cover_relation(lat, cover)), ref);
        }
        CHECK(verify_relation(lat, cover_relation(lat, cyclic.empty() ? std::vector<std::size_t>{lat.whole()} : [&] {
                                                       auto v = cyclic;
                                                       if (lat.is_cyclic(lat.whole())) v.push_back(lat.whole());
                                                       return v;
                                                   }())));
    }
}

TEST_CASE("partition relation checks its input") {
    auto g = make("S3");
    SubgroupLattice lat(g);
    auto parts = subgroups_of_order(lat, 2);
    CHECK_THROWS_AS(partition_relation(lat, parts), leo::Error);
    parts.push_back(by_label(lat, "C3"));
    auto rel = partition_relation(lat, parts);
    CHECK(verify_relation(lat, rel));
    CHECK(rel.terms == cover_relation(lat, parts).terms);
    CHECK_THROWS_AS(partition_relation(lat, {lat.whole(), by_label(lat, "C3")}), leo::Error);
}

TEST_CASE("Kani relations") {
    SUBCASE("V4 with its three C2") {
        auto g = make("V4");
        SubgroupLattice lat(g);
        auto c2s = subgroups_of_order(lat, 2);
        auto rel = kani_relation(lat, c2s, abelian_kernels(lat));
        CHECK(rel.kind == RelationKind::GeneralisedUseful);
        for (auto h : c2s) CHECK(rel.coeff(h) == 1);
        CHECK(rel.coeff(lat.whole()) == -2);
        CHECK(verify_relation(lat, rel));

        // independent inclusion-exclusion over explicit product sets
        oracle::Dense sum(g->order());
        for (unsigned mask = 1; mask < 8; ++mask) {
            std::vector<std::vector<ElementId>> parts;
            for (unsigned i = 0; i < 3; ++i)
                if (mask >> i & 1u) parts.push_back(lat.subgroup(c2s[i]).elements);
            auto avg = oracle::dense_average(*g, oracle::product_set(*g, parts));
            int sign = parts.size() % 2 ? 1 : -1;
            for (std::size_t x = 0; x < sum.size(); ++x) sum[x] += sign * avg[x];
        }
        oracle::Dense one(g->order());
        one[0] = 1;
        CHECK(sum == one);
        CHECK(to_dense(*g, expand(lat, rel)) == sum);
    }
    SUBCASE("C2 with itself fails the kernel condition") {
        auto g = make("C2");
        SubgroupLattice lat(g);
        try {
            kani_relation(lat, {lat.whole()}, abelian_kernels(lat));
            FAIL("expected KernelConditionFails");
        } catch (const leo::Error& e) {
            CHECK(e.code() == leo::Errc::KernelConditionFails);
        }
    }
    SUBCASE("C2xC4 with the two factors") {
        // The character sgn x i has kernel C2 = <(1,2)>, which contains neither
        // factor, so the condition fails; the candidate identity is false too.
        auto g = make("C2xC4");
        SubgroupLattice lat(g);
        std::size_t h1 = SIZE_MAX, h2 = SIZE_MAX;
        for (std::size_t i = 0; i < lat.size(); ++i) {
            const auto& s = lat.subgroup(i);
            bool moves_left = false, moves_right = false;
            for (auto x : s.elements) {
                const auto& p = g->element(x);
                for (std::size_t pt = 0; pt < 2; ++pt) moves_left |= p(pt) != pt;
                for (std::size_t pt = 2; pt < 6; ++pt) moves_right |= p(pt) != pt;
            }
            if (s.order() == 2 && moves_left && !moves_right) h1 = i;
            if (s.order() == 4 && !moves_left && moves_right) h2 = i;
        }
        REQUIRE(h1 != SIZE_MAX);
        REQUIRE(h2 != SIZE_MAX);
        CHECK_THROWS_AS(kani_relation(lat, {h1, h2}, abelian_kernels(lat)), leo::Error);
        auto candidate = make_generalised({{h1, 1}, {h2, 1}, {lat.whole(), -1}});
        CHECK_FALSE(verify_relation(lat, candidate));
    }
    SUBCASE("non-permuting subgroups are rejected") {
        auto g = make("S3");
        SubgroupLattice lat(g);
        auto c2s = subgroups_of_order(lat, 2);
        try {
            kani_relation(lat, {c2s[0], c2s[1]}, {});
            FAIL("expected ProductsNotSubgroups");
        } catch (const leo::Error& e) {
            CHECK(e.code() == leo::Errc::ProductsNotSubgroups);
        }
    }
    SUBCASE("C2xC2xC2 with its seven C2") {
        auto g = make("C2xC2xC2");
        SubgroupLattice lat(g);
        auto rel = kani_relation(lat, subgroups_of_order(lat, 2), abelian_kernels(lat));
        CHECK(verify_relation(lat, rel));
    }
}

TEST_CASE("generalised relation with algebra coefficients") {
    auto g = make("V4");
    SubgroupLattice lat(g);
    auto rel = kani_relation(lat, subgroups_of_order(lat, 2), abelian_kernels(lat));
    IdempotentRelation alt = rel;
    std::vector<std::pair<std::size_t, AlgebraElement>> gt;
    for (const auto& [h, c] : rel.terms) gt.emplace_back(h, AlgebraElement::one().scaled(c));
    alt.generalised_terms = gt;
    CHECK(verify_relation(lat, alt));
    // moving a coefficient by an element of H leaves a_H e_H unchanged
    auto h = gt[0].first;
    ElementId x = lat.subgroup(h).elements.back();
    (*alt.generalised_terms)[0].second = AlgebraElement::term(x, gt[0].second.coeff(0));
    CHECK(verify_relation(lat, alt));
}

TEST_CASE("rational representations") {
    auto c2 = make("C2");
    SubgroupLattice lat(c2);
    auto reg = RationalRep::regular(c2);
    CHECK(reg.dimension() == 2);
    CHECK(reg.validation_mode() == "exhaustive");
    CHECK(rep_apply(reg, AlgebraElement::one()) == QMatrix::identity(2));
    auto p = rep_apply(reg, idempotent(lat, lat.whole()));
    QMatrix half(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) half(i, j) = mpq_class(1, 2);
    CHECK(p == half);
    CHECK(p.rank() == 1);

    for (const auto* ref : {"S3", "D8", "A4"}) {
        auto g = make(ref);
        SubgroupLattice l(g);
        for (auto rep : {RationalRep::regular(g), RationalRep::permutation(g), RationalRep::coset(l, 1)}) {
            for (std::size_t h = 0; h < l.size(); ++h) {
                auto m = rep_apply(rep, idempotent(l, h));
                CHECK(m * m == m);
            }
        }
    }

    QMatrix bad(1, 1);
    bad(0, 0) = 2;
    CHECK_THROWS_AS(RationalRep(c2, {bad}), leo::Error);
    QMatrix sign(1, 1);
    sign(0, 0) = -1;
    CHECK(RationalRep(c2, {sign}).dimension() == 1);
}

TEST_CASE("coset module ranks match fixed-point counts") {
    auto g = make("S4");
    SubgroupLattice lat(g);
    for (std::size_t h = 0; h < lat.size(); h += 3) {
        auto rep = RationalRep::coset(lat, h);
        CHECK(rep.dimension() * lat.subgroup(h).order() == g->order());
        for (std::size_t k = 0; k < lat.size(); k += 2) {
            // dim of K-invariants of Q[G/H] is the number of (K,H) double cosets
            std::set<std::vector<ElementId>> dcs;
            for (ElementId x = 0; x < g->order(); ++x) {
                std::vector<ElementId> dc;
                for (auto a : lat.subgroup(k).elements)
                    for (auto b : lat.subgroup(h).elements) dc.push_back(g->mul(g->mul(a, x), b));
                std::sort(dc.begin(), dc.end());
                dc.erase(std::unique(dc.begin(), dc.end()), dc.end());
                dcs.insert(dc);
            }
            CHECK(rep_apply(rep, idempotent(lat, k)).rank() == dcs.size());
        }
    }
}

TEST_CASE("vanishing equivalences") {
    {
        auto g = make("S3");
        SubgroupLattice lat(g);
        std::vector<std::size_t> kernels{lat.whole(), by_label(lat, "C3"), lat.trivial()};
        auto z = vanishing_equivalences(RationalRep::zero(g), lat, kernels);
        CHECK(z.module_zero);
        CHECK(z.all_ranks_zero);
        CHECK(z.equivalence_holds());
        auto r = vanishing_equivalences(RationalRep::regular(g), lat, kernels);
        CHECK(r.dimension == 6);
        REQUIRE(r.ranks.size() == 3);
        CHECK(r.ranks[0].second == 1);
        CHECK(r.ranks[1].second == 2);
        CHECK(r.ranks[2].second == 6);
        CHECK(r.equivalence_holds());
    }
    {
        auto g = make("C2");
        SubgroupLattice lat(g);
        auto r = vanishing_equivalences(RationalRep::regular(g), lat, {lat.whole(), lat.trivial()});
        CHECK(r.ranks[0].second == 1);
        CHECK_FALSE(r.module_zero);
        CHECK(r.equivalence_holds());
    }
}
