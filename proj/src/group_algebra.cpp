#include "leo/group_algebra.hpp"

#include <algorithm>
#include <random>

#include "leo/error.hpp"

namespace leo::algebra {

AlgebraElement AlgebraElement::term(ElementId g, const mpq_class& c) {
    AlgebraElement a;
    a.add(g, c);
    return a;
}

mpq_class AlgebraElement::coeff(ElementId g) const {
    auto it = c_.find(g);
    return it == c_.end() ? mpq_class(0) : it->second;
}

bool AlgebraElement::is_scalar() const {
    return c_.empty() || (c_.size() == 1 && c_.begin()->first == PermGroup::identity());
}

void AlgebraElement::add(ElementId g, const mpq_class& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = c_.try_emplace(g, c);
    if (fresh) return;
    it->second += c;
    if (sgn(it->second) == 0) c_.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (const auto& [g, c] : o.c_) add(g, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    for (const auto& [g, c] : o.c_) add(g, -c);
    return *this;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    return r += o;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    AlgebraElement r = *this;
    return r -= o;
}

AlgebraElement AlgebraElement::scaled(const mpq_class& s) const {
    AlgebraElement r;
    if (sgn(s) == 0) return r;
    for (const auto& [g, c] : c_) r.c_.emplace(g, c * s);
    return r;
}

AlgebraElement multiply(const PermGroup& g, const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r;
    for (const auto& [x, cx] : a.terms())
        for (const auto& [y, cy] : b.terms()) r.add(g.mul(x, y), cx * cy);
    return r;
}

AlgebraElement conjugate(const PermGroup& g, ElementId x, const AlgebraElement& a) {
    AlgebraElement r;
    for (const auto& [y, c] : a.terms()) r.add(g.conj(x, y), c);
    return r;
}

AlgebraElement norm_element(const SubgroupLattice& lat, std::size_t h) {
    AlgebraElement r;
    for (ElementId x : lat.subgroup(h).elements) r.add(x, 1);
    return r;
}

AlgebraElement idempotent(const SubgroupLattice& lat, std::size_t h) {
    const auto& s = lat.subgroup(h);
    mpq_class c(1, s.order());
    AlgebraElement r;
    for (ElementId x : s.elements) r.add(x, c);
    return r;
}

const char* kind_name(RelationKind k) {
    switch (k) {
        case RelationKind::Plain: return "plain";
        case RelationKind::Useful: return "useful";
        case RelationKind::GeneralisedUseful: return "generalised_useful";
    }
    return "?";
}

mpq_class IdempotentRelation::coeff(std::size_t h) const {
    for (const auto& [i, c] : terms)
        if (i == h) return c;
    return 0;
}

namespace {

std::vector<std::pair<std::size_t, mpq_class>> merge_terms(std::vector<std::pair<std::size_t, mpq_class>> terms) {
    std::map<std::size_t, mpq_class> m;
    for (auto& [i, c] : terms) m[i] += c;
    std::vector<std::pair<std::size_t, mpq_class>> out;
    for (auto& [i, c] : m)
        if (sgn(c) != 0) out.emplace_back(i, c);
    return out;
}

void check_indices(const SubgroupLattice& lat, const std::vector<std::size_t>& idx) {
    for (auto i : idx)
        if (i >= lat.size()) throw Error(Errc::InvalidArgument, "subgroup index out of range");
}

}  // namespace

IdempotentRelation make_relation(std::vector<std::pair<std::size_t, mpq_class>> terms) {
    IdempotentRelation r;
    r.terms = merge_terms(std::move(terms));
    bool useful = !r.terms.empty() && r.terms.front().first == 0;
    r.kind = useful ? RelationKind::Useful : RelationKind::Plain;
    return r;
}

IdempotentRelation make_generalised(std::vector<std::pair<std::size_t, mpq_class>> terms) {
    IdempotentRelation r;
    r.terms = merge_terms(std::move(terms));
    if (!r.terms.empty() && r.terms.front().first == 0)
        throw Error(Errc::InvalidArgument, "generalised relation may not involve the trivial subgroup");
    r.kind = RelationKind::GeneralisedUseful;
    return r;
}

AlgebraElement expand(const SubgroupLattice& lat, const IdempotentRelation& rel) {
    const auto& g = lat.group();
    AlgebraElement sum;
    if (rel.generalised_terms) {
        for (const auto& [h, a] : *rel.generalised_terms) {
            if (h >= lat.size()) throw Error(Errc::InvalidArgument, "subgroup index out of range");
            sum += multiply(g, a, idempotent(lat, h));
        }
        return sum;
    }
    for (const auto& [h, c] : rel.terms) {
        if (h >= lat.size()) throw Error(Errc::InvalidArgument, "subgroup index out of range");
        sum += idempotent(lat, h).scaled(c);
    }
    return sum;
}

bool verify_relation(const SubgroupLattice& lat, const IdempotentRelation& rel) {
    for (const auto& [h, c] : rel.terms)
        if (h >= lat.size()) return false;
    AlgebraElement e = expand(lat, rel);
    if (rel.generalised()) return e == AlgebraElement::one();
    return e.is_zero();
}

std::vector<mpq_class> class_coefficients(const SubgroupLattice& lat, const IdempotentRelation& rel) {
    std::vector<mpq_class> out(lat.num_classes());
    for (const auto& [h, c] : rel.terms) out[lat.class_of(h)] += c;
    return out;
}

std::optional<mpq_class> proportional(const IdempotentRelation& a, const IdempotentRelation& b) {
    if (a.terms.size() != b.terms.size() || b.terms.empty()) return std::nullopt;
    mpq_class r = a.terms[0].second / b.terms[0].second;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (a.terms[i].first != b.terms[i].first || a.terms[i].second != r * b.terms[i].second) return std::nullopt;
    return r;
}

IdempotentRelation cover_relation(const SubgroupLattice& lat, const std::vector<std::size_t>& cover) {
    check_indices(lat, cover);
    const auto n = lat.group().order();
    std::vector<bool> hit(n, false);
    for (auto h : cover)
        for (auto x : lat.subgroup(h).elements) hit[x] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
        throw Error(Errc::NotACover, "listed subgroups do not cover G");

    // Signed subset counts per intersection, built one subgroup at a time.
    std::map<std::size_t, long long> acc;
    for (auto h : cover) {
        std::map<std::size_t, long long> next = acc;
        next[h] += 1;
        for (const auto& [i, c] : acc) next[lat.intersection(i, h)] -= c;
        acc = std::move(next);
    }
    std::vector<std::pair<std::size_t, mpq_class>> terms;
    for (const auto& [i, c] : acc) terms.emplace_back(i, mpq_class(static_cast<long>(c)) * lat.subgroup(i).order());
    terms.emplace_back(lat.whole(), -mpq_class(n));
    return make_relation(std::move(terms));
}

IdempotentRelation partition_relation(const SubgroupLattice& lat, const std::vector<std::size_t>& parts) {
    check_indices(lat, parts);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (lat.intersection(parts[i], parts[j]) != lat.trivial())
                throw Error(Errc::InvalidArgument, "partition components must meet trivially");
    std::vector<std::pair<std::size_t, mpq_class>> terms;
    std::size_t covered = 0;
    for (auto h : parts) {
        terms.emplace_back(h, mpq_class(lat.subgroup(h).order()));
        covered += lat.subgroup(h).order() - 1;
    }
    if (covered + 1 != lat.group().order()) throw Error(Errc::NotACover, "components do not cover G");
    terms.emplace_back(lat.trivial(), -mpq_class(static_cast<long>(parts.size()) - 1));
    terms.emplace_back(lat.whole(), -mpq_class(lat.group().order()));
    return make_relation(std::move(terms));
}

IdempotentRelation kani_relation(const SubgroupLattice& lat, const std::vector<std::size_t>& subgroups,
                                 const std::vector<std::size_t>& kernels) {
    check_indices(lat, subgroups);
    check_indices(lat, kernels);
    if (subgroups.empty()) throw Error(Errc::InvalidArgument, "no subgroups given");
    for (std::size_t i = 0; i < subgroups.size(); ++i)
        for (std::size_t j = i + 1; j < subgroups.size(); ++j)
            if (!lat.product(subgroups[i], subgroups[j]))
                throw Error(Errc::ProductsNotSubgroups, "H_i H_j is not a subgroup");
    for (auto n : kernels) {
        bool ok = std::any_of(subgroups.begin(), subgroups.end(), [&](std::size_t h) { return lat.leq(h, n); });
        if (!ok)
            throw Error(Errc::KernelConditionFails,
                        "a character kernel of order " + std::to_string(lat.subgroup(n).order()) +
                            " contains none of the subgroups");
    }
    for (auto h : subgroups)
        if (h == lat.trivial()) throw Error(Errc::InvalidArgument, "trivial subgroup in generalised relation");

    // Pairwise permuting subgroups: every product is the join.
    std::map<std::size_t, long long> acc;
    for (auto h : subgroups) {
        std::map<std::size_t, long long> next = acc;
        next[h] += 1;
        for (const auto& [p, c] : acc) next[lat.join(p, h)] -= c;
        acc = std::move(next);
    }
    std::vector<std::pair<std::size_t, mpq_class>> terms;
    for (const auto& [p, c] : acc) terms.emplace_back(p, mpq_class(static_cast<long>(c)));
    return make_generalised(std::move(terms));
}

IdempotentRelation frobenius_relation(const SubgroupLattice& lat, const groups::FrobeniusStructure& fs) {
    const auto& n = lat.subgroup(fs.kernel);
    const auto& h = lat.subgroup(fs.complement);
    std::vector<std::pair<std::size_t, mpq_class>> terms;
    terms.emplace_back(fs.kernel, 1);
    mpq_class c(h.order(), n.order());
    c.canonicalize();
    for (ElementId x : n.elements) terms.emplace_back(lat.conjugate(fs.complement, x), c);
    terms.emplace_back(lat.whole(), -mpq_class(h.order()));
    terms.emplace_back(lat.trivial(), -1);
    // Distinct N-conjugates of H number |N|, so merging is a no-op on valid input.
    return make_relation(std::move(terms));
}

RationalRep::RationalRep(std::shared_ptr<const PermGroup> g, std::vector<QMatrix> generator_matrices)
    : group_(std::move(g)), gens_(std::move(generator_matrices)) {
    const auto& G = *group_;
    const auto& gid = G.generator_ids();
    if (gens_.size() != gid.size()) throw Error(Errc::InvalidArgument, "one matrix per generator required");
    dim_ = gens_.empty() ? 0 : gens_[0].rows();
    for (const auto& m : gens_)
        if (m.rows() != dim_ || m.cols() != dim_) throw Error(Errc::InvalidArgument, "generator matrices must be square of one size");

    const auto n = G.order();
    mats_.assign(n, QMatrix());
    std::vector<bool> seen(n, false);
    mats_[0] = QMatrix::identity(dim_);
    seen[0] = true;
    std::vector<ElementId> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        ElementId x = queue[qi];
        for (std::size_t k = 0; k < gid.size(); ++k) {
            ElementId y = G.mul(x, gid[k]);
            QMatrix m = mats_[x] * gens_[k];
            if (!seen[y]) {
                seen[y] = true;
                mats_[y] = std::move(m);
                queue.push_back(y);
            } else if (!(m == mats_[y])) {
                throw Error(Errc::ValidationFailed, "generator matrices do not define a representation");
            }
        }
    }
    auto check = [&](ElementId a, ElementId b) {
        if (!(mats_[a] * mats_[b] == mats_[G.mul(a, b)]))
            throw Error(Errc::ValidationFailed, "representation is not multiplicative");
    };
    if (n <= 200) {
        mode_ = "exhaustive";
        for (ElementId a = 0; a < n; ++a)
            for (ElementId b = 0; b < n; ++b) check(a, b);
    } else {
        mode_ = "sampled";
        std::mt19937 rng(0x5eed);
        std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(n - 1));
        for (int i = 0; i < 1000; ++i) check(pick(rng), pick(rng));
    }
}

namespace {

QMatrix action_matrix(std::size_t dim, const std::vector<std::size_t>& image) {
    QMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(image[i], i) = 1;
    return m;
}

}  // namespace

RationalRep RationalRep::regular(std::shared_ptr<const PermGroup> g) {
    std::vector<QMatrix> mats;
    for (ElementId s : g->generator_ids()) {
        std::vector<std::size_t> img(g->order());
        for (ElementId x = 0; x < g->order(); ++x) img[x] = g->mul(s, x);
        mats.push_back(action_matrix(g->order(), img));
    }
    return RationalRep(std::move(g), std::move(mats));
}

RationalRep RationalRep::permutation(std::shared_ptr<const PermGroup> g) {
    std::vector<QMatrix> mats;
    for (ElementId s : g->generator_ids()) {
        const auto& p = g->element(s);
        std::vector<std::size_t> img(p.degree());
        for (std::size_t i = 0; i < p.degree(); ++i) img[i] = p(i);
        mats.push_back(action_matrix(p.degree(), img));
    }
    return RationalRep(std::move(g), std::move(mats));
}

RationalRep RationalRep::coset(const SubgroupLattice& lat, std::size_t h) {
    const auto& G = lat.group();
    const auto& H = lat.subgroup(h);
    std::vector<std::size_t> coset_of(G.order(), SIZE_MAX);
    std::vector<ElementId> reps;
    for (ElementId x = 0; x < G.order(); ++x) {
        if (coset_of[x] != SIZE_MAX) continue;
        for (ElementId y : H.elements) coset_of[G.mul(x, y)] = reps.size();
        reps.push_back(x);
    }
    std::vector<QMatrix> mats;
    for (ElementId s : G.generator_ids()) {
        std::vector<std::size_t> img(reps.size());
        for (std::size_t i = 0; i < reps.size(); ++i) img[i] = coset_of[G.mul(s, reps[i])];
        mats.push_back(action_matrix(reps.size(), img));
    }
    return RationalRep(lat.group_ptr(), std::move(mats));
}

RationalRep RationalRep::zero(std::shared_ptr<const PermGroup> g) {
    std::vector<QMatrix> mats(g->generator_ids().size(), QMatrix(0, 0));
    return RationalRep(std::move(g), std::move(mats));
}

QMatrix rep_apply(const RationalRep& rep, const AlgebraElement& a) {
    QMatrix m(rep.dimension(), rep.dimension());
    for (const auto& [g, c] : a.terms()) {
        if (g >= rep.group().order()) throw Error(Errc::InvalidArgument, "element outside the group");
        m.add_scaled(rep.matrix(g), c);
    }
    return m;
}

VanishingReport vanishing_equivalences(const RationalRep& rep, const SubgroupLattice& lat,
                                       const std::vector<std::size_t>& kernels) {
    VanishingReport r;
    r.dimension = rep.dimension();
    r.module_zero = rep.dimension() == 0;
    r.all_ranks_zero = true;
    for (auto n : kernels) {
        std::size_t rk = rep_apply(rep, idempotent(lat, n)).rank();
        r.ranks.emplace_back(n, rk);
        if (rk != 0) r.all_ranks_zero = false;
    }
    return r;
}

}  // namespace leo::algebra
