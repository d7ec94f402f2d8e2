#include <memory>
#include <random>
#include <set>

#include "doctest.h"
#include "leo/error.hpp"
#include "leo/perm_group.hpp"
#include "leo/subgroup_lattice.hpp"
#include "oracles/group_oracles.hpp"

using namespace leo::groups;

namespace {

std::shared_ptr<const PermGroup> make(const std::string& ref) {
    return std::make_shared<const PermGroup>(parse_group_ref(ref));
}

std::multiset<std::size_t> class_sizes(const PermGroup& g) {
    std::multiset<std::size_t> s;
    for (const auto& c : g.conjugacy_classes()) s.insert(c.size());
    return s;
}

}  // namespace

TEST_CASE("perm composition and parsing") {
    Perm a = Perm::parse_cycles(3, "(0 1)");
    Perm b = Perm::parse_cycles(3, "(0 1 2)");
    // (a*b)(x) = a(b(x))
    CHECK((a * b)(0) == a(b(0)));
    CHECK((a * b)(2) == 1);
    CHECK((b * b.inverse()).is_identity());
    CHECK(Perm::parse_cycles(4, "(0 3)(1 2)").cycle_string() == "(0 3)(1 2)");
    CHECK_THROWS_AS(Perm::parse_cycles(3, "(0 5)"), leo::Error);
    CHECK_THROWS_AS(Perm(std::vector<std::uint16_t>{0, 0, 1}), leo::Error);
}

TEST_CASE("group_from_generators") {
    auto s3 = group_from_generators(3, {Perm::parse_cycles(3, "(0 1)"), Perm::parse_cycles(3, "(0 1 2)")});
    CHECK(s3.order() == 6);
    auto triv = group_from_generators(1, {});
    CHECK(triv.order() == 1);
    std::vector<Perm> d8gens{Perm::parse_cycles(4, "(0 1 2 3)"), Perm::parse_cycles(4, "(0 3)(1 2)")};
    auto d8 = group_from_generators(4, d8gens);
    CHECK(d8.order() == 8);
    CHECK(d8.order() == oracle::naive_closure(4, d8gens).size());
    // identity first and lexicographic ordering
    CHECK(d8.element(0).is_identity());
    for (std::size_t i = 1; i < d8.order(); ++i) CHECK(d8.element(i - 1) < d8.element(i));
    for (const auto& g : d8gens) CHECK(d8.find(g).has_value());
}

TEST_CASE("closure cap") {
    std::vector<Perm> gens{Perm::parse_cycles(7, "(0 1)"), Perm::parse_cycles(7, "(0 1 2 3 4 5 6)")};
    CHECK_THROWS_AS(group_from_generators(7, gens, 1000), leo::Error);
    try {
        group_from_generators(7, gens, 1000);
    } catch (const leo::Error& e) {
        CHECK(e.code() == leo::Errc::ClosureTooLarge);
    }
}

TEST_CASE("presets") {
    auto aff3 = parse_group_ref("Aff(3)");
    CHECK(aff3.order() == 6);
    CHECK(structure_name(aff3) == "S3");
    auto aff4 = parse_group_ref("Aff(4)");
    CHECK(aff4.order() == 12);
    CHECK(structure_name(aff4) == "A4");
    auto sl25 = parse_group_ref("SL2(5)");
    CHECK(sl25.order() == 120);
    CHECK(oracle::naive_closure(sl25.degree(), sl25.generators()).size() == 5 * (25 - 1));
    CHECK(structure_name(sl25) == "SL2(5)");
    CHECK(parse_group_ref("Q8").order() == 8);
    CHECK(structure_name(parse_group_ref("Q8")) == "Q8");
    CHECK(structure_name(parse_group_ref("D8")) == "D8");
    CHECK(structure_name(parse_group_ref("S4")) == "S4");
    CHECK(structure_name(parse_group_ref("A4")) == "A4");
    CHECK(structure_name(parse_group_ref("V4")) == "V4");
    CHECK(structure_name(parse_group_ref("C2xC4")) == "C2xC4");
    CHECK(structure_name(parse_group_ref("Aff(5)")) == "F20");
    CHECK(parse_group_ref("Aff(7)").order() == 42);
    CHECK(parse_group_ref("Aff(8)").order() == 56);
    CHECK(parse_group_ref("Aff(9)").order() == 72);
    CHECK(parse_group_ref("C12").is_cyclic());
    CHECK(parse_group_ref("D10").order() == 10);
    CHECK_THROWS_AS(parse_group_ref("Aff(6)"), leo::Error);
    CHECK_THROWS_AS(parse_group_ref("SL2(4)"), leo::Error);
    CHECK_THROWS_AS(parse_group_ref("Foo"), leo::Error);
}

TEST_CASE("conjugacy classes") {
    CHECK(class_sizes(parse_group_ref("S3")) == std::multiset<std::size_t>{1, 3, 2});
    auto c4 = parse_group_ref("C4");
    CHECK(c4.conjugacy_classes().size() == 4);
    auto s4 = parse_group_ref("S4");
    CHECK(class_sizes(s4) == std::multiset<std::size_t>{1, 6, 3, 8, 6});
    // ordering: (element order, size, least element)
    const auto& cl = s4.conjugacy_classes();
    std::vector<std::size_t> sizes;
    for (const auto& c : cl) sizes.push_back(c.size());
    CHECK(sizes == std::vector<std::size_t>{1, 3, 6, 8, 6});
    for (const auto* ref : {"S4", "A4", "D8", "Q8", "Aff(5)", "Aff(7)", "SL2(3)"}) {
        auto g = parse_group_ref(ref);
        auto naive = oracle::naive_closure(g.degree(), g.generators());
        CHECK(class_sizes(g) == oracle::naive_class_sizes(naive));
    }
}

TEST_CASE("subgroup lattice of S4") {
    SubgroupLattice lat(make("S4"));
    CHECK(lat.size() == 30);
    CHECK(lat.num_classes() == 11);
    std::multiset<std::size_t> nonnormal;
    for (std::size_t c = 0; c < lat.num_classes(); ++c)
        if (lat.class_members(c).size() > 1) nonnormal.insert(lat.class_members(c).size());
    CHECK(nonnormal == std::multiset<std::size_t>{3, 6, 4, 3, 3, 4, 3});
    CHECK(lat.subgroup(lat.trivial()).order() == 1);
    CHECK(lat.subgroup(lat.whole()).order() == 24);
    CHECK(lat.class_label(lat.class_of(lat.whole())) == "S4");
}

TEST_CASE("small lattices and Moebius values") {
    SubgroupLattice v4(make("V4"));
    CHECK(v4.size() == 5);
    CHECK(v4.mobius(v4.trivial(), v4.whole()) == 2);
    for (std::size_t i = 1; i < 4; ++i) CHECK(v4.mobius(i, v4.whole()) == -1);
    for (int p : {2, 3, 5, 7, 11}) {
        SubgroupLattice cp(make("C" + std::to_string(p)));
        CHECK(cp.size() == 2);
        CHECK(cp.mobius(0, 1) == -1);
    }
}

TEST_CASE("lattice agrees with brute-force subgroup enumeration") {
    for (const auto* ref : {"S3", "V4", "C6", "D8", "Q8", "A4", "C2xC4", "D12", "S4", "C2xC2xC2"}) {
        auto g = make(ref);
        SubgroupLattice lat(g);
        auto naive = oracle::naive_subgroups(oracle::naive_closure(g->degree(), g->generators()));
        CHECK_MESSAGE(lat.size() == naive.size(), ref);
    }
}

TEST_CASE("Moebius defining identity on every interval") {
    for (const auto* ref : {"S3", "V4", "D8", "Q8", "A4", "S4", "Aff(5)", "C12", "C2xC2xC2", "Aff(7)"}) {
        SubgroupLattice lat(make(ref));
        for (std::size_t i = 0; i < lat.size(); ++i)
            for (std::size_t h = i; h < lat.size(); ++h) {
                if (!lat.leq(i, h)) continue;
                long long s = 0;
                for (std::size_t c = i; c <= h; ++c)
                    if (lat.leq(i, c) && lat.leq(c, h)) s += lat.mobius(c, h);
                CHECK(s == (i == h ? 1 : 0));
            }
    }
}

TEST_CASE("Moebius matches chain counts on groups of order <= 24") {
    for (const auto* ref : {"S3", "V4", "D8", "Q8", "A4", "C2xC4", "D12", "S4", "C2xC2xC2"}) {
        SubgroupLattice lat(make(ref));
        std::vector<std::set<Perm>> subs;
        for (std::size_t i = 0; i < lat.size(); ++i) {
            std::set<Perm> s;
            for (auto x : lat.subgroup(i).elements) s.insert(lat.group().element(x));
            subs.push_back(s);
        }
        for (std::size_t i = 0; i < lat.size(); ++i)
            for (std::size_t h = i; h < lat.size(); ++h)
                if (lat.leq(i, h)) CHECK(lat.mobius(i, h) == oracle::chain_mobius(subs, i, h));
    }
}

TEST_CASE("conjugate subgroups have identical Moebius rows") {
    SubgroupLattice lat(make("S4"));
    const auto& G = lat.group();
    for (ElementId g = 0; g < G.order(); ++g)
        for (std::size_t i = 0; i < lat.size(); ++i)
            for (std::size_t h = 0; h < lat.size(); ++h)
                if (lat.leq(i, h))
                    CHECK(lat.mobius(i, h) == lat.mobius(lat.conjugate(i, g), lat.conjugate(h, g)));
}

TEST_CASE("frobenius_structure") {
    {
        SubgroupLattice lat(make("S3"));
        auto fs = frobenius_structure(lat);
        REQUIRE(fs);
        CHECK(lat.subgroup(fs->kernel).order() == 3);
        CHECK(lat.subgroup(fs->complement).order() == 2);
    }
    {
        SubgroupLattice lat(make("A4"));
        auto fs = frobenius_structure(lat);
        REQUIRE(fs);
        CHECK(lat.class_label(lat.class_of(fs->kernel)) == "V4");
        CHECK(lat.subgroup(fs->complement).order() == 3);
    }
    CHECK_FALSE(frobenius_structure(SubgroupLattice(make("C6"))));
    CHECK_FALSE(frobenius_structure(SubgroupLattice(make("S4"))));
    CHECK_FALSE(frobenius_structure(SubgroupLattice(make("Q8"))));
}

TEST_CASE("Frobenius structure invariants") {
    std::mt19937 rng(12345);
    for (const auto* ref : {"S3", "A4", "Aff(5)", "Aff(7)", "Aff(8)", "Aff(9)", "D10", "D14", "Aff(11)"}) {
        std::string r = ref;
        SubgroupLattice lat(make(r));
        auto fs = frobenius_structure(lat);
        REQUIRE_MESSAGE(fs, r);
        const auto& G = lat.group();
        const auto& N = lat.subgroup(fs->kernel);
        const auto& H = lat.subgroup(fs->complement);
        CHECK(N.order() * H.order() == G.order());
        CHECK(lat.is_normal(fs->kernel));
        CHECK(lat.subgroup(lat.intersection(fs->kernel, fs->complement)).order() == 1);
        auto meet_ok = [&](ElementId g) {
            if (H.contains(g)) return true;
            return lat.subgroup(lat.intersection(fs->complement, lat.conjugate(fs->complement, g))).order() == 1;
        };
        if (G.order() <= 200) {
            for (ElementId g = 0; g < G.order(); ++g) CHECK(meet_ok(g));
        }
        std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(G.order() - 1));
        for (int k = 0; k < 20; ++k) CHECK(meet_ok(pick(rng)));
    }
}

TEST_CASE("useful and generalised relation predicates") {
    CHECK(admits_useful_relation(SubgroupLattice(make("V4"))));
    CHECK_FALSE(admits_useful_relation(SubgroupLattice(make("Q8"))));
    CHECK_FALSE(admits_useful_relation(SubgroupLattice(make("C12"))));
    CHECK(admits_generalised_relation(SubgroupLattice(make("S3"))));
    CHECK_FALSE(admits_generalised_relation(SubgroupLattice(make("C8"))));
    CHECK_FALSE(admits_generalised_relation(SubgroupLattice(make("Q8"))));
    for (const auto* ref : {"S3", "V4", "Q8", "C12", "D8", "A4", "S4", "SL2(3)", "SL2(5)", "Aff(5)", "C2xC4", "C9"}) {
        auto g = make(ref);
        SubgroupLattice lat(g);
        CHECK_MESSAGE(admits_useful_relation(lat) == admits_useful_relation(*g), ref);
    }
}

TEST_CASE("SL2(17) is detected without a lattice") {
    auto g = parse_group_ref("SL2(17)");
    CHECK(g.order() == 4896);
    CHECK_THROWS_AS(SubgroupLattice(std::make_shared<const PermGroup>(g)), leo::Error);
    CHECK(admits_generalised_relation(g));
    CHECK_FALSE(admits_useful_relation(g));
    CHECK_FALSE(admits_generalised_relation(parse_group_ref("SL2(5)")));
    // the Borel subgroup of SL2(13) contains a non-abelian group of order 39
    CHECK(admits_useful_relation(parse_group_ref("SL2(13)")));
}

TEST_CASE("class labels resolve") {
    SubgroupLattice lat(make("S4"));
    for (std::size_t c = 0; c < lat.num_classes(); ++c) {
        CHECK(lat.class_by_label(lat.class_label(c)) == c);
        CHECK(lat.class_by_label(std::to_string(c)) == c);
    }
    CHECK_FALSE(lat.class_by_label("nonsense"));
}
