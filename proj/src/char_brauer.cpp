#include "leo/char_brauer.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "leo/error.hpp"

namespace leo::chars {

using algebra::IdempotentRelation;

bool ClassFunction::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](const mpq_class& q) { return sgn(q) == 0; });
}

ClassFunction trivial_character(const PermGroup& g) {
    return ClassFunction{std::vector<mpq_class>(g.conjugacy_classes().size(), mpq_class(1))};
}

ClassFunction perm_character(const SubgroupLattice& lat, std::size_t h) {
    const auto& g = lat.group();
    const auto& cls = g.conjugacy_classes();
    const auto& sub = lat.subgroup(h);
    std::vector<std::size_t> meet(cls.size(), 0);
    for (ElementId x : sub.elements) ++meet[g.class_of(x)];
    ClassFunction f;
    f.values.resize(cls.size());
    for (std::size_t c = 0; c < cls.size(); ++c) {
        // (1/|H|) #{x : x g x^-1 in H} = |C_G(g)| |cl(g) n H| / |H|
        mpq_class v(static_cast<long>(g.order() / cls[c].size() * meet[c]), static_cast<long>(sub.order()));
        v.canonicalize();
        f.values[c] = v;
    }
    return f;
}

mpq_class inner_product(const PermGroup& g, const ClassFunction& a, const ClassFunction& b) {
    const auto& cls = g.conjugacy_classes();
    if (a.values.size() != cls.size() || b.values.size() != cls.size())
        throw Error(Errc::InvalidArgument, "class function length mismatch");
    mpq_class s = 0;
    for (std::size_t c = 0; c < cls.size(); ++c)
        s += mpq_class(static_cast<long>(cls[c].size())) * a.values[c] * b.values[g.inverse_class(c)];
    s /= static_cast<long>(g.order());
    return s;
}

mpq_class restricted_mean(const SubgroupLattice& lat, std::size_t h, const ClassFunction& f) {
    const auto& sub = lat.subgroup(h);
    mpq_class s = 0;
    for (ElementId x : sub.elements) s += f.values[lat.group().class_of(x)];
    s /= static_cast<long>(sub.order());
    return s;
}

mpq_class BrauerRelation::coeff(std::size_t cls) const {
    for (const auto& [c, a] : terms)
        if (c == cls) return a;
    return 0;
}

BrauerRelation make_brauer(std::vector<std::pair<std::size_t, mpq_class>> terms) {
    std::map<std::size_t, mpq_class> m;
    for (auto& [c, a] : terms) m[c] += a;
    BrauerRelation r;
    for (auto& [c, a] : m)
        if (sgn(a) != 0) r.terms.emplace_back(c, a);
    return r;
}

ClassFunction evaluate(const SubgroupLattice& lat, const BrauerRelation& rel) {
    ClassFunction f{std::vector<mpq_class>(lat.group().conjugacy_classes().size())};
    for (const auto& [c, a] : rel.terms) {
        if (c >= lat.num_classes()) throw Error(Errc::InvalidArgument, "subgroup class out of range");
        auto pc = perm_character(lat, lat.class_rep(c));
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += a * pc.values[i];
    }
    return f;
}

bool verify_brauer(const SubgroupLattice& lat, const BrauerRelation& rel) {
    for (const auto& [c, a] : rel.terms)
        if (c >= lat.num_classes()) return false;
    return evaluate(lat, rel).is_zero();
}

BrauerRelation normalized(const BrauerRelation& rel) {
    if (rel.terms.empty()) return rel;
    mpz_class den = 1, num = 0;
    for (const auto& [c, a] : rel.terms) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
    for (const auto& [c, a] : rel.terms) {
        mpz_class v = a.get_num() * (den / a.get_den());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
    }
    mpq_class scale(den, num);
    scale.canonicalize();
    if (sgn(rel.terms.front().second) < 0) scale = -scale;
    BrauerRelation out = rel;
    for (auto& [c, a] : out.terms) a *= scale;
    return out;
}

BrauerRelation gilman_relation(const SubgroupLattice& lat, const std::vector<std::size_t>& family) {
    if (lat.group().is_cyclic()) throw Error(Errc::GroupCyclic, "cyclic groups have no non-zero relations");
    std::vector<bool> member(lat.size(), false);
    for (auto h : family) {
        if (h >= lat.size()) throw Error(Errc::InvalidArgument, "subgroup index out of range");
        member[h] = true;
    }
    if (!member[lat.whole()]) throw Error(Errc::IncompleteFamily, "family must contain G");
    for (std::size_t i = 0; i < lat.size(); ++i)
        if (lat.is_cyclic(i) && !member[i]) throw Error(Errc::IncompleteFamily, "family misses a cyclic subgroup");
    std::vector<std::pair<std::size_t, mpq_class>> terms;
    for (std::size_t h = 0; h < lat.size(); ++h) {
        if (!member[h]) continue;
        long long mu = lat.mobius_in(member, h, lat.whole());
        if (mu != 0) terms.emplace_back(lat.class_of(h), mpq_class(static_cast<long>(mu * static_cast<long long>(lat.subgroup(h).order()))));
    }
    return make_brauer(std::move(terms));
}

BrauerRelation gilman_relation_for(const SubgroupLattice& lat, std::size_t h) {
    if (h >= lat.size()) throw Error(Errc::InvalidArgument, "subgroup index out of range");
    if (lat.is_cyclic(h)) throw Error(Errc::GroupCyclic, "subgroup is cyclic");
    std::vector<std::pair<std::size_t, mpq_class>> terms;
    for (std::size_t i = 0; i < lat.size(); ++i) {
        if (!lat.leq(i, h)) continue;
        long long mu = lat.mobius(i, h);
        if (mu != 0) terms.emplace_back(lat.class_of(i), mpq_class(static_cast<long>(mu * static_cast<long long>(lat.subgroup(i).order()))));
    }
    return make_brauer(std::move(terms));
}

namespace {

int number_mobius(std::size_t n) {
    int mu = 1;
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

std::vector<ArtinTerm> artin_coefficients(const SubgroupLattice& lat) {
    if (lat.group().is_cyclic()) throw Error(Errc::GroupCyclic, "G is cyclic");
    std::vector<ArtinTerm> out;
    for (std::size_t c = 0; c < lat.num_classes(); ++c) {
        std::size_t h = lat.class_rep(c);
        if (!lat.is_cyclic(h)) continue;
        long a = 0;
        for (std::size_t z = 0; z < lat.size(); ++z)
            if (lat.is_cyclic(z) && lat.leq(h, z))
                a += number_mobius(lat.subgroup(z).order() / lat.subgroup(h).order());
        out.push_back({c, mpq_class(a)});
    }
    return out;
}

ClassFunction artin_sum(const SubgroupLattice& lat, const std::vector<ArtinTerm>& terms) {
    ClassFunction f{std::vector<mpq_class>(lat.group().conjugacy_classes().size())};
    for (const auto& t : terms) {
        std::size_t h = lat.class_rep(t.cls);
        mpq_class frac(static_cast<long>(lat.subgroup(h).order()), static_cast<long>(lat.group().order()));
        frac.canonicalize();
        mpq_class w = t.a * static_cast<long>(lat.class_members(t.cls).size()) * frac;
        auto pc = perm_character(lat, h);
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += w * pc.values[i];
    }
    return f;
}

IdempotentRelation brauer_to_idempotent(const SubgroupLattice& lat, const BrauerRelation& rel) {
    if (!verify_brauer(lat, rel)) throw Error(Errc::RelationInvalid, "Brauer relation does not vanish");
    std::vector<std::pair<std::size_t, mpq_class>> terms;
    for (const auto& [c, a] : rel.terms) {
        const auto& members = lat.class_members(c);
        mpq_class share = a / static_cast<long>(members.size());
        for (auto m : members) terms.emplace_back(m, share);
    }
    return algebra::make_relation(std::move(terms));
}

BrauerRelation idempotent_to_brauer(const SubgroupLattice& lat, const IdempotentRelation& rel) {
    if (rel.generalised()) throw Error(Errc::GeneralisedNotConvertible, "generalised relations have no Brauer form");
    if (!algebra::verify_relation(lat, rel)) throw Error(Errc::RelationInvalid, "idempotent relation does not vanish");
    std::vector<std::pair<std::size_t, mpq_class>> terms;
    for (const auto& [h, a] : rel.terms) terms.emplace_back(lat.class_of(h), a);
    return make_brauer(std::move(terms));
}

namespace {

std::vector<std::size_t> classes_by_order(const SubgroupLattice& lat) {
    std::vector<std::size_t> order(lat.num_classes());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lat.subgroup(lat.class_rep(a)).order() < lat.subgroup(lat.class_rep(b)).order();
    });
    return order;
}

QMatrix perm_character_matrix(const SubgroupLattice& lat, const std::vector<std::size_t>& order) {
    std::size_t k = lat.group().conjugacy_classes().size();
    QMatrix m(order.size(), k);
    for (std::size_t r = 0; r < order.size(); ++r) {
        auto pc = perm_character(lat, lat.class_rep(order[r]));
        for (std::size_t j = 0; j < k; ++j) m(r, j) = pc.values[j];
    }
    return m;
}

}  // namespace

std::size_t relation_space_dimension(const SubgroupLattice& lat) {
    auto order = classes_by_order(lat);
    return order.size() - perm_character_matrix(lat, order).rank();
}

std::vector<BrauerRelation> relation_space_basis(const SubgroupLattice& lat) {
    auto order = classes_by_order(lat);
    std::vector<BrauerRelation> out;
    for (const auto& v : perm_character_matrix(lat, order).left_nullspace()) {
        std::vector<std::pair<std::size_t, mpq_class>> terms;
        for (std::size_t r = 0; r < v.size(); ++r) terms.emplace_back(order[r], v[r]);
        out.push_back(make_brauer(std::move(terms)));
    }
    return out;
}

std::vector<std::size_t> kernel_subgroups(const SubgroupLattice& lat, const CharacterTable& t) {
    std::vector<std::size_t> out;
    for (const auto& k : t.kernels) {
        auto idx = lat.find_elements(k);
        if (!idx) throw Error(Errc::ValidationFailed, "character kernel missing from the lattice");
        out.push_back(*idx);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

IdempotentRelation kani_relation(const SubgroupLattice& lat, const std::vector<std::size_t>& subgroups) {
    if (lat.group().order() > CharacterTable::kMaxOrder)
        throw Error(Errc::UnsupportedParameter, "character kernels unavailable above order " +
                                                    std::to_string(CharacterTable::kMaxOrder));
    auto table = character_table(lat.group());
    return algebra::kani_relation(lat, subgroups, kernel_subgroups(lat, table));
}

DimFormulaReport dim_formula_check(const algebra::RationalRep& rep, const SubgroupLattice& lat,
                                   const BrauerRelation& rel) {
    if (&rep.group() != &lat.group() && rep.group().order() != lat.group().order())
        throw Error(Errc::InvalidArgument, "representation and lattice disagree");
    if (!verify_brauer(lat, rel)) throw Error(Errc::RelationInvalid, "Brauer relation does not vanish");
    DimFormulaReport r;
    r.weighted_sum = 0;
    for (const auto& [c, a] : rel.terms) {
        std::size_t d = algebra::rep_apply(rep, algebra::idempotent(lat, lat.class_rep(c))).rank();
        r.dims.emplace_back(c, d);
        r.weighted_sum += a * static_cast<long>(d);
    }
    return r;
}

std::string format_brauer(const SubgroupLattice& lat, const BrauerRelation& rel) {
    if (rel.terms.empty()) return "0 = 0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, a] : rel.terms) {
        mpq_class v = a;
        if (!first) os << (sgn(v) < 0 ? " - " : " + ");
        else if (sgn(v) < 0) os << "-";
        if (abs(v) != 1) os << to_string(abs(v)) << " ";
        os << "Ind(" << lat.class_label(c) << ")";
        first = false;
    }
    os << " = 0";
    return os.str();
}

}  // namespace leo::chars
