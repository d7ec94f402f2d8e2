#include "leo/defect_engine.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "leo/error.hpp"
#include "leo/group_algebra.hpp"

namespace leo::defects {

const char* base_name(Base b) {
    switch (b) {
        case Base::Rationals: return "Q";
        case Base::ImaginaryQuadratic: return "imag-quadratic";
        case Base::Other: return "other";
    }
    return "?";
}

Base parse_base(const std::string& s) {
    if (s == "Q" || s == "rationals" || s == "RATIONALS") return Base::Rationals;
    if (s == "iq" || s == "imag-quadratic" || s == "IMAGINARY_QUADRATIC") return Base::ImaginaryQuadratic;
    if (s == "other" || s == "OTHER") return Base::Other;
    throw Error(Errc::ParseError, "unknown base '" + s + "'");
}

FieldContext make_context(std::shared_ptr<const SubgroupLattice> lat, Base base, ElementId conjugation,
                          std::uint64_t prime, std::size_t base_degree) {
    const auto& g = lat->group();
    if (conjugation >= g.order()) throw Error(Errc::InvalidArgument, "conjugation element out of range");
    if (g.mul(conjugation, conjugation) != g.identity())
        throw Error(Errc::InvalidArgument, "complex conjugation must be an involution or the identity");
    if (base_degree == 0) throw Error(Errc::InvalidArgument, "base degree must be positive");
    if (base != Base::Other && base_degree != 1) throw Error(Errc::InvalidArgument, "base degree applies to base 'other' only");
    FieldContext ctx;
    ctx.lattice = std::move(lat);
    ctx.base = base;
    ctx.conjugation = conjugation;
    ctx.prime = prime;
    ctx.base_degree = base_degree;
    return ctx;
}

Signature fixed_field_signature(const FieldContext& ctx, std::size_t h) {
    const auto& lat = ctx.lat();
    const auto& g = lat.group();
    const auto& sub = lat.subgroup(h);
    std::size_t index = g.order() / sub.order();
    Signature s;
    if (ctx.base == Base::ImaginaryQuadratic) {
        s.r2 = index;
        return s;
    }
    std::size_t fixed = 0;
    for (ElementId x = 0; x < g.order(); ++x)
        if (sub.contains(g.conj(g.inv(x), ctx.conjugation))) ++fixed;
    std::size_t r1 = fixed / sub.order();
    if ((index - r1) % 2) throw Error(Errc::ParityError, "odd number of non-real places");
    s.r1 = r1 * ctx.base_degree;
    s.r2 = (index - r1) / 2 * ctx.base_degree;
    return s;
}

std::size_t fixed_field_unit_rank(const FieldContext& ctx, std::size_t h) {
    auto s = fixed_field_signature(ctx, h);
    return s.r1 + s.r2 - 1;
}

namespace {

DefectRelation from_brauer(const chars::BrauerRelation& b, std::string provenance) {
    auto n = chars::normalized(b);
    return DefectRelation{n.terms, std::move(provenance)};
}

}  // namespace

std::vector<DefectRelation> defect_relations(const FieldContext& ctx) {
    const auto& lat = ctx.lat();
    std::vector<DefectRelation> out;
    auto add = [&](DefectRelation r) {
        for (auto& o : out)
            if (o.terms == r.terms) {
                o.provenance += "+" + r.provenance;
                return;
            }
        out.push_back(std::move(r));
    };
    for (std::size_t c = 0; c < lat.num_classes(); ++c) {
        std::size_t h = lat.class_rep(c);
        if (lat.is_cyclic(h)) continue;
        add(from_brauer(chars::gilman_relation_for(lat, h), "moebius:" + lat.class_label(c)));
    }
    if (auto fs = groups::frobenius_structure(lat))
        add(from_brauer(chars::idempotent_to_brauer(lat, algebra::frobenius_relation(lat, *fs)), "frobenius"));
    return out;
}

std::string format_relation(const SubgroupLattice& lat, const DefectRelation& rel) {
    std::ostringstream lhs, rhs;
    bool l0 = true, r0 = true;
    for (const auto& [c, a] : rel.terms) {
        auto& os = sgn(a) > 0 ? lhs : rhs;
        bool& first = sgn(a) > 0 ? l0 : r0;
        if (!first) os << " + ";
        mpq_class v = abs(a);
        if (v != 1) os << to_string(v);
        os << "d(" << lat.class_label(c) << ")";
        first = false;
    }
    return (l0 ? "0" : lhs.str()) + " = " + (r0 ? "0" : rhs.str());
}

bool DegreeSupport::admits(std::size_t n) const {
    std::vector<bool> reach(n + 1, false);
    reach[0] = true;
    for (std::size_t v = 1; v <= n; ++v)
        for (auto d : degrees)
            if (d <= v && reach[v - d]) {
                reach[v] = true;
                break;
            }
    return reach[n];
}

DegreeSupport degree_support_for(const chars::CharacterTable& t, const std::vector<bool>& normal_classes) {
    std::set<std::size_t> ds;
    for (std::size_t i = 0; i < t.degrees.size(); ++i) {
        if (t.degrees[i] == 1) continue;
        bool contains = true;
        for (std::size_t c = 0; c < normal_classes.size() && contains; ++c)
            if (normal_classes[c] && !t.kernel_classes[i][c]) contains = false;
        if (contains) ds.insert(t.degrees[i]);
    }
    return DegreeSupport{std::vector<std::size_t>(ds.begin(), ds.end())};
}

namespace {

std::vector<bool> classes_of_subgroup(const SubgroupLattice& lat, std::size_t h) {
    const auto& g = lat.group();
    std::vector<bool> out(g.conjugacy_classes().size(), false);
    for (auto x : lat.subgroup(h).elements) out[g.class_of(x)] = true;
    return out;
}

bool abelian_base(Base b) { return b == Base::Rationals || b == Base::ImaginaryQuadratic; }

// class a contains a conjugate of class b
std::vector<std::vector<bool>> class_containment(const SubgroupLattice& lat) {
    std::size_t k = lat.num_classes();
    std::vector<std::vector<bool>> m(k, std::vector<bool>(k, false));
    for (std::size_t a = 0; a < k; ++a) {
        std::size_t ra = lat.class_rep(a);
        for (std::size_t b = 0; b < k; ++b)
            for (auto mb : lat.class_members(b))
                if (lat.leq(mb, ra)) {
                    m[a][b] = true;
                    break;
                }
    }
    return m;
}

}  // namespace

DegreeSupport degree_support(const FieldContext& ctx) {
    if (!abelian_base(ctx.base)) throw Error(Errc::BaseNotSupported, "degree support needs base Q or imaginary quadratic");
    const auto& g = ctx.lat().group();
    if (g.is_abelian()) throw Error(Errc::GroupAbelian, "G is abelian");
    auto t = chars::character_table(g);
    return degree_support_for(t, classes_of_subgroup(ctx.lat(), ctx.lat().trivial()));
}

namespace {

struct Linear {
    std::vector<std::pair<std::size_t, long>> terms;
    bool equality;
    long rhs;
};

}  // namespace

SolveResult solve_defects(const FieldContext& ctx, const std::vector<Fact>& facts, std::size_t max_solutions) {
    const auto& lat = ctx.lat();
    const auto& g = lat.group();
    const std::size_t k = lat.num_classes();
    SolveResult res;

    std::vector<std::size_t> rank(k);
    std::vector<std::vector<bool>> domain(k);
    for (std::size_t c = 0; c < k; ++c) {
        rank[c] = fixed_field_unit_rank(ctx, lat.class_rep(c));
        res.upper_bounds.push_back(static_cast<long>(rank[c] / 2));
        domain[c].assign(rank[c] / 2 + 1, true);
    }

    if (abelian_base(ctx.base)) {
        std::optional<chars::CharacterTable> table;
        if (!g.is_abelian()) {
            if (g.order() <= chars::CharacterTable::kMaxOrder)
                table = chars::character_table(g);
            else
                res.notes.push_back("degree support skipped: group above the character-table limit");
        }
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t h = lat.class_rep(c);
            if (!lat.is_normal(h)) continue;
            if (lat.quotient_abelian(h)) {
                for (std::size_t v = 1; v < domain[c].size(); ++v) domain[c][v] = false;
                res.notes.push_back("d(" + lat.class_label(c) + ") = 0: abelian over the base");
            } else if (table) {
                auto sup = degree_support_for(*table, classes_of_subgroup(lat, h));
                for (std::size_t v = 0; v < domain[c].size(); ++v)
                    if (!sup.admits(v)) domain[c][v] = false;
            }
        }
    }

    std::vector<Linear> cons;
    for (const auto& rel : defect_relations(ctx)) {
        Linear l{{}, true, 0};
        for (const auto& [c, a] : rel.terms) l.terms.emplace_back(c, a.get_num().get_si());
        cons.push_back(std::move(l));
    }
    auto contain = class_containment(lat);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            if (a == b || !contain[a][b]) continue;
            // H_b <= H_a: d(a) <= d(b) and d(b) <= d(a) + floor((rk b - rk a)/2)
            cons.push_back(Linear{{{a, 1}, {b, -1}}, false, 0});
            long slack = (static_cast<long>(rank[b]) - static_cast<long>(rank[a])) / 2;
            cons.push_back(Linear{{{b, 1}, {a, -1}}, false, slack});
        }
    for (const auto& f : facts) {
        if (f.cls >= k) throw Error(Errc::InvalidArgument, "fact refers to an unknown subgroup class");
        if (f.value < 0) {
            for (std::size_t v = 0; v < domain[f.cls].size(); ++v) domain[f.cls][v] = false;
            continue;
        }
        for (std::size_t v = 0; v < domain[f.cls].size(); ++v) {
            bool ok = f.op == Fact::Op::Eq ? static_cast<long>(v) == f.value : static_cast<long>(v) <= f.value;
            if (!ok) domain[f.cls][v] = false;
        }
    }

    std::vector<long> lo(k), hi(k);
    for (std::size_t c = 0; c < k; ++c) {
        lo[c] = std::numeric_limits<long>::max();
        hi[c] = -1;
        for (std::size_t v = 0; v < domain[c].size(); ++v)
            if (domain[c][v]) {
                lo[c] = std::min<long>(lo[c], v);
                hi[c] = std::max<long>(hi[c], v);
            }
        if (hi[c] < 0) return res;  // empty domain
    }

    std::vector<std::vector<std::size_t>> touching(k);
    for (std::size_t i = 0; i < cons.size(); ++i)
        for (const auto& [c, a] : cons[i].terms) touching[c].push_back(i);

    std::vector<long> val(k, 0);
    std::vector<bool> set(k, false);
    auto consistent = [&](const Linear& l) {
        long mn = 0, mx = 0;
        for (const auto& [c, a] : l.terms) {
            if (set[c]) {
                mn += a * val[c];
                mx += a * val[c];
            } else if (a > 0) {
                mn += a * lo[c];
                mx += a * hi[c];
            } else {
                mn += a * hi[c];
                mx += a * lo[c];
            }
        }
        return l.equality ? (mn <= l.rhs && l.rhs <= mx) : mn <= l.rhs;
    };
    std::function<void(std::size_t)> dfs = [&](std::size_t c) {
        if (res.truncated) return;
        if (c == k) {
            if (res.assignments.size() >= max_solutions) {
                res.truncated = true;
                return;
            }
            res.assignments.push_back(DefectAssignment{val});
            return;
        }
        for (std::size_t v = 0; v < domain[c].size(); ++v) {
            if (!domain[c][v]) continue;
            val[c] = static_cast<long>(v);
            set[c] = true;
            bool ok = std::all_of(touching[c].begin(), touching[c].end(), [&](std::size_t i) { return consistent(cons[i]); });
            if (ok) dfs(c + 1);
            set[c] = false;
        }
    };
    dfs(0);
    return res;
}

const char* plan_tag_name(PlanTag t) {
    switch (t) {
        case PlanTag::CharacterKernel: return "kernel-of-character";
        case PlanTag::CyclicQuotient: return "cyclic-quotient";
        case PlanTag::Frobenius: return "Frobenius";
        case PlanTag::RelationSubgroups: return "relation-subgroups";
        case PlanTag::Generalised: return "generalised-relation";
    }
    return "?";
}

namespace {

std::optional<std::string> automatic_leo(const FieldContext& ctx, std::size_t cls) {
    const auto& lat = ctx.lat();
    std::size_t h = lat.class_rep(cls);
    if (abelian_base(ctx.base) && lat.is_normal(h) && lat.quotient_abelian(h)) return "abelian over the base";
    if (fixed_field_unit_rank(ctx, h) <= 1) return "unit rank at most 1";
    return std::nullopt;
}

ReductionPlan finish(const FieldContext& ctx, PlanTag tag, std::vector<std::size_t> classes, std::string why) {
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    ReductionPlan p;
    p.tag = tag;
    for (auto c : classes) {
        if (auto reason = automatic_leo(ctx, c))
            p.dropped.emplace_back(c, *reason);
        else
            p.classes.push_back(c);
    }
    p.justification = std::move(why);
    if (!p.dropped.empty()) p.justification += "; known cases dropped";
    return p;
}

}  // namespace

ReductionPlan reduction_plan(const FieldContext& ctx) {
    const auto& lat = ctx.lat();
    const auto& g = lat.group();
    std::vector<ReductionPlan> cands;

    if (g.order() <= chars::CharacterTable::kMaxOrder) {
        auto t = chars::character_table(g);
        bool faithful = std::any_of(t.kernels.begin(), t.kernels.end(), [](const auto& k) { return k.size() == 1; });
        if (!faithful) {
            std::vector<std::size_t> classes;
            for (auto h : chars::kernel_subgroups(lat, t)) classes.push_back(lat.class_of(h));
            bool ab = g.is_abelian();
            cands.push_back(finish(ctx, ab ? PlanTag::CyclicQuotient : PlanTag::CharacterKernel, classes,
                                   ab ? "cyclic-quotient subfields of an abelian extension"
                                      : "fixed fields of all character kernels"));
        }
    }
    if (auto fs = groups::frobenius_structure(lat)) {
        if (algebra::verify_relation(lat, algebra::frobenius_relation(lat, *fs)))
            cands.push_back(finish(ctx, PlanTag::Frobenius, {lat.class_of(fs->kernel), lat.class_of(fs->complement)},
                                   "Frobenius kernel and complement"));
    }
    for (std::size_t c = 0; c < lat.num_classes(); ++c) {
        std::size_t u = lat.class_rep(c);
        if (lat.is_cyclic(u) || lat.mobius(lat.trivial(), u) == 0) continue;
        auto rel = chars::gilman_relation_for(lat, u);
        if (!algebra::verify_relation(lat, chars::brauer_to_idempotent(lat, rel))) continue;
        std::vector<std::size_t> support;
        for (std::size_t i = 1; i < lat.size(); ++i)
            if (lat.leq(i, u) && lat.mobius(i, u) != 0) support.push_back(i);
        std::vector<std::size_t> minimal;
        for (auto i : support) {
            bool is_min = std::none_of(support.begin(), support.end(), [&](std::size_t j) { return j != i && lat.leq(j, i); });
            if (is_min) minimal.push_back(lat.class_of(i));
        }
        cands.push_back(finish(ctx, PlanTag::RelationSubgroups, minimal,
                               "useful Moebius relation of " + lat.class_label(c)));
    }
    if (cands.empty() && groups::admits_generalised_relation(lat)) {
        std::vector<std::size_t> all;
        for (std::size_t c = 0; c < lat.num_classes(); ++c)
            if (c != lat.class_of(lat.trivial())) all.push_back(c);
        cands.push_back(finish(ctx, PlanTag::Generalised, all, "generalised useful relation: all proper subfields"));
    }
    if (cands.empty()) throw Error(Errc::NoReductionAvailable, "no relation or kernel set reduces Leo(L,p)");
    auto best = std::min_element(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
        return a.classes.size() < b.classes.size();
    });
    return *best;
}

std::optional<ReductionPlan> reduction_plan_without_lattice(const groups::PermGroup& g) {
    if (!groups::admits_generalised_relation(g)) return std::nullopt;
    ReductionPlan p;
    p.tag = PlanTag::Generalised;
    p.all_proper_subfields = true;
    p.justification = "generalised useful relation: all proper subfields";
    return p;
}

}  // namespace leo::defects
