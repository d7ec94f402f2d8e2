#include <fstream>
#include <map>
#include <sstream>

#include "common.hpp"
#include "leo/char_brauer.hpp"
#include "leo/defect_engine.hpp"
#include "leo/error.hpp"
#include "leo/group_algebra.hpp"

namespace leo::cli {

namespace {

using namespace groups;
using algebra::IdempotentRelation;
using chars::BrauerRelation;

constexpr const char* kRelationSchema = "leo-relation 1";

void add_group_source(CLI::App* sub, GroupSource& src) {
    sub->add_option("--group", src.ref, "group reference such as S4, D8, Aff(5), C2xC4");
    sub->add_option("--gen", src.gens, "generator in cycle notation; repeatable");
    sub->add_option("--degree", src.degree, "number of points for --gen");
}

ojson group_doc(const PermGroup& g) {
    ojson d;
    d["name"] = g.name();
    d["degree"] = g.degree();
    ojson gens = ojson::array();
    for (const auto& p : g.generators()) gens.push_back(p.cycle_string());
    d["generators"] = gens;
    return d;
}

ojson subgroup_doc(const SubgroupLattice& lat, std::size_t h) {
    ojson d;
    d["label"] = lat.class_label(lat.class_of(h));
    d["order"] = lat.subgroup(h).order();
    ojson gens = ojson::array();
    for (auto x : lat.subgroup(h).gens) gens.push_back(lat.group().element(x).cycle_string());
    d["generators"] = gens;
    return d;
}

std::size_t class_by_label(const SubgroupLattice& lat, const std::string& label) {
    auto c = lat.class_by_label(label);
    if (!c) throw Error(Errc::ParseError, "unknown subgroup class '" + label + "' in " + lat.group().name());
    return *c;
}

// "C2a" names a whole conjugacy class, "C2a#1" one member of it.
std::vector<std::size_t> expand_labels(const SubgroupLattice& lat, const std::vector<std::string>& labels) {
    std::vector<std::size_t> out;
    for (const auto& l : labels) {
        auto hash = l.find('#');
        auto c = class_by_label(lat, l.substr(0, hash));
        const auto& members = lat.class_members(c);
        if (hash == std::string::npos) {
            out.insert(out.end(), members.begin(), members.end());
            continue;
        }
        std::size_t k = 0;
        try {
            k = std::stoul(l.substr(hash + 1));
        } catch (const std::logic_error&) {
            throw Error(Errc::ParseError, "bad member index in '" + l + "'");
        }
        if (k >= members.size()) throw Error(Errc::InvalidArgument, "class " + l.substr(0, hash) + " has " +
                                                                        std::to_string(members.size()) + " members");
        out.push_back(members[k]);
    }
    return out;
}

std::string coeff_prefix(const mpq_class& v, bool first) {
    std::string s = first ? (sgn(v) < 0 ? "-" : "") : (sgn(v) < 0 ? " - " : " + ");
    if (abs(v) != 1) s += mpq_class(abs(v)).get_str() + " ";
    return s;
}

// Useful relations are shown solved for 1; runs of conjugates with one coefficient are collapsed.
std::string idempotent_text(const SubgroupLattice& lat, const IdempotentRelation& rel) {
    std::vector<std::pair<std::size_t, mpq_class>> terms;
    std::string lhs = "0";
    if (rel.generalised()) {
        lhs = "1";
        if (rel.generalised_terms) return "1 = sum of " + std::to_string(rel.generalised_terms->size()) +
                                          " terms a_H e_H with a_H in Q[G]";
        terms = rel.terms;
    } else if (rel.kind == algebra::RelationKind::Useful) {
        lhs = "1";
        mpq_class c = rel.coeff(lat.trivial());
        for (const auto& [h, a] : rel.terms)
            if (h != lat.trivial()) terms.emplace_back(h, mpq_class(-a / c));
    } else {
        terms = rel.terms;
    }
    if (terms.empty()) return lhs + " = 0";
    std::ostringstream os;
    os << lhs << " =";
    bool first = true;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        auto cls = lat.class_of(terms[i].first);
        while (j < terms.size() && lat.class_of(terms[j].first) == cls && terms[j].second == terms[i].second) ++j;
        os << (first ? " " : "") << coeff_prefix(terms[i].second, first) << "e(" << lat.class_label(cls) << ")";
        if (j - i > 1) os << " x" << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

ojson idempotent_doc(const SubgroupLattice& lat, const IdempotentRelation& rel) {
    ojson d;
    d["schema"] = kRelationSchema;
    d["type"] = "idempotent";
    d["group"] = group_doc(lat.group());
    d["kind"] = algebra::kind_name(rel.kind);
    d["equation"] = rel.generalised() ? "1 = sum a_H e_H" : "0 = sum a_H e_H";
    ojson terms = ojson::array();
    for (const auto& [h, a] : rel.terms) terms.push_back({{"subgroup", subgroup_doc(lat, h)}, {"coeff", q_str(a)}});
    d["terms"] = terms;
    if (rel.generalised_terms) {
        ojson at = ojson::array();
        for (const auto& [h, a] : *rel.generalised_terms) {
            ojson c = ojson::object();
            for (const auto& [x, v] : a.terms()) c[lat.group().element(x).cycle_string()] = q_str(v);
            at.push_back({{"subgroup", subgroup_doc(lat, h)}, {"coeff", c}});
        }
        d["algebra_terms"] = at;
    }
    d["text"] = idempotent_text(lat, rel);
    return d;
}

ojson brauer_doc(const SubgroupLattice& lat, const BrauerRelation& rel) {
    ojson d;
    d["schema"] = kRelationSchema;
    d["type"] = "brauer";
    d["group"] = group_doc(lat.group());
    d["equation"] = "0 = sum a_H Ind_H^G 1";
    ojson terms = ojson::array();
    for (const auto& [c, a] : rel.terms)
        terms.push_back({{"class", subgroup_doc(lat, lat.class_rep(c))}, {"coeff", q_str(a)}});
    d["terms"] = terms;
    d["text"] = chars::format_brauer(lat, rel);
    return d;
}

ojson artin_doc(const SubgroupLattice& lat, const std::vector<chars::ArtinTerm>& terms) {
    ojson d;
    d["schema"] = kRelationSchema;
    d["type"] = "artin";
    d["group"] = group_doc(lat.group());
    d["equation"] = "1_G = sum over cyclic H of a_H |H|/|G| Ind_H^G 1";
    ojson t = ojson::array();
    for (const auto& a : terms) t.push_back({{"class", subgroup_doc(lat, lat.class_rep(a.cls))}, {"coeff", q_str(a.a)}});
    d["terms"] = t;
    return d;
}

std::shared_ptr<const SubgroupLattice> lattice_from_doc(const ojson& doc) {
    const auto& g = doc.at("group");
    GroupSource src;
    src.ref = g.at("name").get<std::string>();
    src.degree = g.at("degree").get<std::size_t>();
    for (const auto& s : g.at("generators")) src.gens.push_back(s.get<std::string>());
    if (src.gens.empty()) src.gens.push_back("()");
    return load_lattice(src);
}

std::size_t subgroup_from_doc(const SubgroupLattice& lat, const ojson& d) {
    const auto& g = lat.group();
    std::vector<ElementId> ids;
    for (const auto& s : d.at("generators")) {
        auto id = g.find(Perm::parse_cycles(g.degree(), s.get<std::string>()));
        if (!id) throw Error(Errc::ParseError, "generator " + s.dump() + " is not in the group");
        ids.push_back(*id);
    }
    std::size_t h = lat.generated_by(ids);
    if (d.contains("order") && d["order"].get<std::size_t>() != lat.subgroup(h).order())
        throw Error(Errc::ParseError, "subgroup order does not match its generators");
    return h;
}

ojson verify_doc(const ojson& doc) {
    if (doc.value("schema", "") != kRelationSchema) throw Error(Errc::ParseError, "not a relation document");
    auto lat = lattice_from_doc(doc);
    std::string type = doc.at("type").get<std::string>();
    ojson out;
    out["type"] = type;
    bool ok = false;
    if (type == "brauer") {
        std::vector<std::pair<std::size_t, mpq_class>> terms;
        for (const auto& t : doc.at("terms"))
            terms.emplace_back(lat->class_of(subgroup_from_doc(*lat, t.at("class"))), q_from_json(t.at("coeff")));
        auto rel = chars::make_brauer(terms);
        ok = chars::verify_brauer(*lat, rel);
        out["text"] = chars::format_brauer(*lat, rel);
    } else if (type == "idempotent") {
        std::vector<std::pair<std::size_t, mpq_class>> terms;
        for (const auto& t : doc.at("terms"))
            terms.emplace_back(subgroup_from_doc(*lat, t.at("subgroup")), q_from_json(t.at("coeff")));
        std::string kind = doc.value("kind", "plain");
        IdempotentRelation rel =
            kind == "generalised_useful" ? algebra::make_generalised(terms) : algebra::make_relation(terms);
        if (doc.contains("algebra_terms")) {
            std::vector<std::pair<std::size_t, algebra::AlgebraElement>> at;
            const auto& g = lat->group();
            for (const auto& t : doc["algebra_terms"]) {
                algebra::AlgebraElement a;
                for (const auto& [perm, v] : t.at("coeff").items())
                    a.add(g.index_of(Perm::parse_cycles(g.degree(), perm)), q_from_json(v));
                at.emplace_back(subgroup_from_doc(*lat, t.at("subgroup")), a);
            }
            rel.generalised_terms = std::move(at);
        }
        if (algebra::kind_name(rel.kind) != kind)
            throw Error(Errc::ParseError, "declared kind '" + kind + "' does not match the coefficients");
        ok = algebra::verify_relation(*lat, rel);
        out["kind"] = kind;
        out["text"] = idempotent_text(*lat, rel);
    } else if (type == "artin") {
        std::vector<chars::ArtinTerm> terms;
        for (const auto& t : doc.at("terms")) {
            auto h = subgroup_from_doc(*lat, t.at("class"));
            if (!lat->is_cyclic(h)) throw Error(Errc::ParseError, "Artin terms must be cyclic subgroups");
            terms.push_back({lat->class_of(h), q_from_json(t.at("coeff"))});
        }
        ok = chars::artin_sum(*lat, terms) == chars::trivial_character(lat->group());
    } else {
        throw Error(Errc::ParseError, "unknown relation type '" + type + "'");
    }
    out["group"] = lat->group().name();
    out["verified"] = ok;
    return out;
}

// Relation documents inside a file: a bare document, a result document or a list.
void collect_docs(const ojson& j, std::vector<ojson>& out) {
    if (j.is_array()) {
        for (const auto& x : j) collect_docs(x, out);
        return;
    }
    if (!j.is_object()) return;
    if (j.contains("schema")) {
        out.push_back(j);
        return;
    }
    if (j.contains("payload")) return collect_docs(j["payload"], out);
    for (const char* key : {"relation", "idempotent_image", "brauer_image", "relations"})
        if (j.contains(key)) collect_docs(j[key], out);
}

struct DeriveArgs {
    GroupSource src;
    std::string method;
    std::string subgroup;
    std::vector<std::string> subgroups;
};

CommandResult derive(const DeriveArgs& a) {
    auto lat = load_lattice(a.src);
    const auto& g = lat->group();
    ojson p;
    p["group"] = group_doc(g);
    p["method"] = a.method;
    std::ostringstream sum;
    sum << a.method << " relation for " << g.name() << "\n";
    bool verified = false;
    auto with_idempotent = [&](const BrauerRelation& br) {
        auto img = chars::brauer_to_idempotent(*lat, br);
        bool v1 = chars::verify_brauer(*lat, br), v2 = algebra::verify_relation(*lat, img);
        p["relation"] = brauer_doc(*lat, br);
        p["idempotent_image"] = idempotent_doc(*lat, img);
        sum << "  " << chars::format_brauer(*lat, br) << "\n  " << idempotent_text(*lat, img) << "\n";
        verified = v1 && v2;
    };
    auto with_brauer = [&](const IdempotentRelation& rel) {
        verified = algebra::verify_relation(*lat, rel);
        p["relation"] = idempotent_doc(*lat, rel);
        sum << "  " << idempotent_text(*lat, rel) << "\n";
        if (!rel.generalised()) {
            // lead with a positive Ind(C1) coefficient and coprime integers
            auto br = chars::normalized(chars::idempotent_to_brauer(*lat, rel));
            verified = verified && chars::verify_brauer(*lat, br);
            p["brauer_image"] = brauer_doc(*lat, br);
            sum << "  " << chars::format_brauer(*lat, br) << "\n";
        }
    };
    if (a.method == "gilman") {
        if (!a.subgroup.empty()) {
            with_idempotent(chars::gilman_relation_for(*lat, lat->class_rep(class_by_label(*lat, a.subgroup))));
        } else {
            std::vector<std::size_t> family;
            for (std::size_t i = 0; i < lat->size(); ++i)
                if (lat->is_cyclic(i) || i == lat->whole()) family.push_back(i);
            with_idempotent(chars::gilman_relation(*lat, family));
        }
    } else if (a.method == "artin") {
        auto terms = chars::artin_coefficients(*lat);
        verified = chars::artin_sum(*lat, terms) == chars::trivial_character(g);
        p["relation"] = artin_doc(*lat, terms);
        for (const auto& t : terms) sum << "  a(" << lat->class_label(t.cls) << ") = " << q_str(t.a) << "\n";
    } else if (a.method == "cover" || a.method == "partition" || a.method == "kani") {
        if (a.subgroups.empty()) throw Error(Errc::InvalidArgument, "--subgroups is required for " + a.method);
        auto subs = expand_labels(*lat, a.subgroups);
        if (a.method == "cover") with_brauer(algebra::cover_relation(*lat, subs));
        else if (a.method == "partition") with_brauer(algebra::partition_relation(*lat, subs));
        else with_brauer(chars::kani_relation(*lat, subs));
    } else if (a.method == "frobenius") {
        auto fs = frobenius_structure(*lat);
        if (!fs) throw Error(Errc::InvalidArgument, g.name() + " is not a Frobenius group");
        p["kernel"] = subgroup_doc(*lat, fs->kernel);
        p["complement"] = subgroup_doc(*lat, fs->complement);
        with_brauer(algebra::frobenius_relation(*lat, *fs));
    }
    p["verified"] = verified;
    auto r = ok_result("relations derive", p, sum.str());
    if (!verified) r.status = Status::Error;
    return r;
}

CommandResult verify_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidArgument, "cannot read " + path);
    auto j = ojson::parse(in);
    std::vector<ojson> docs;
    collect_docs(j, docs);
    if (docs.empty()) throw Error(Errc::ParseError, "no relation documents in " + path);
    ojson results = ojson::array();
    bool all = true;
    std::ostringstream sum;
    for (const auto& d : docs) {
        auto r = verify_doc(d);
        all = all && r["verified"].get<bool>();
        sum << (r["verified"].get<bool>() ? "verified " : "FAILED   ") << r["type"].get<std::string>() << " relation in "
            << r["group"].get<std::string>() << "\n";
        results.push_back(r);
    }
    ojson p;
    p["file"] = path;
    p["results"] = results;
    p["verified"] = all;
    auto r = ok_result("relations verify", p, sum.str());
    if (!all) {
        r.status = Status::Error;
        r.payload["error"] = "ValidationFailed";
    }
    return r;
}

CommandResult group_show(const GroupSource& src) {
    auto g = load_group(src);
    ojson p;
    p["group"] = group_doc(*g);
    p["structure"] = structure_name(*g);
    p["order"] = g->order();
    p["abelian"] = g->is_abelian();
    p["cyclic"] = g->is_cyclic();
    p["exponent"] = g->exponent();
    ojson cls = ojson::array();
    for (const auto& c : g->conjugacy_classes())
        cls.push_back({{"size", c.size()}, {"element_order", g->element_order(c[0])},
                       {"representative", g->element(c[0]).cycle_string()}});
    p["conjugacy_classes"] = cls;
    std::ostringstream sum;
    sum << g->name() << ": order " << g->order() << ", degree " << g->degree() << ", structure "
        << structure_name(*g) << ", " << g->conjugacy_classes().size() << " conjugacy classes\n";
    try {
        SubgroupLattice lat(g);
        ojson subs = ojson::array();
        for (std::size_t c = 0; c < lat.num_classes(); ++c) {
            auto rep = lat.class_rep(c);
            auto d = subgroup_doc(lat, rep);
            d["conjugates"] = lat.class_members(c).size();
            d["cyclic"] = lat.is_cyclic(rep);
            d["normal"] = lat.is_normal(rep);
            subs.push_back(d);
            sum << "  " << d["label"].get<std::string>() << "  order " << lat.subgroup(rep).order() << "  x"
                << lat.class_members(c).size() << (lat.is_normal(rep) ? "  normal" : "") << "\n";
        }
        p["subgroup_classes"] = subs;
        auto fs = frobenius_structure(lat);
        p["frobenius"] = fs ? ojson{{"kernel", subgroup_doc(lat, fs->kernel)}, {"complement", subgroup_doc(lat, fs->complement)}}
                            : ojson(nullptr);
        p["admits_useful_relation"] = admits_useful_relation(lat);
        p["admits_generalised_relation"] = admits_generalised_relation(lat);
    } catch (const Error& e) {
        if (e.code() != Errc::ClosureTooLarge) throw;
        p["subgroup_classes"] = nullptr;
        p["lattice_note"] = e.what();
        p["admits_useful_relation"] = admits_useful_relation(*g);
        p["admits_generalised_relation"] = admits_generalised_relation(*g);
    }
    sum << "  useful relation: " << (p["admits_useful_relation"].get<bool>() ? "yes" : "no")
        << ", generalised: " << (p["admits_generalised_relation"].get<bool>() ? "yes" : "no") << "\n";
    return ok_result("group show", p, sum.str());
}

CommandResult chars_table(const GroupSource& src) {
    auto lat = load_lattice(src);
    const auto& g = lat->group();
    auto t = chars::character_table(g);
    ojson p;
    p["group"] = group_doc(g);
    p["degrees"] = t.degrees;
    ojson kernels = ojson::array();
    std::ostringstream sum;
    sum << "character degrees of " << g.name() << ":";
    for (auto d : t.degrees) sum << " " << d;
    sum << "\n";
    for (std::size_t i = 0; i < t.degrees.size(); ++i) {
        auto h = lat->find_elements(t.kernels[i]);
        std::string label = h ? lat->class_label(lat->class_of(*h)) : "?";
        kernels.push_back({{"degree", t.degrees[i]}, {"kernel", label}, {"kernel_order", t.kernels[i].size()}});
        sum << "  chi" << i << "  degree " << t.degrees[i] << "  kernel " << label << "\n";
    }
    p["characters"] = kernels;
    p["verified_primes"] = t.verified_primes;
    if (!g.is_abelian()) {
        auto ds = defects::degree_support(defects::make_context(lat, defects::Base::Rationals, 0));
        p["nonlinear_degrees"] = ds.degrees;
        std::vector<std::size_t> admitted;
        for (std::size_t v = 0; v <= 12; ++v)
            if (ds.admits(v)) admitted.push_back(v);
        p["admissible_defects_upto_12"] = admitted;
        sum << "  admissible defect values up to 12:";
        for (auto v : admitted) sum << " " << v;
        sum << "\n";
    }
    return ok_result("chars table", p, sum.str());
}

struct DefectArgs {
    GroupSource src;
    std::string base = "Q";
    std::string conjugation = "()";
    std::size_t base_degree = 1;
    std::vector<std::string> facts;
    std::size_t max_solutions = 100000;
};

defects::FieldContext context_of(const DefectArgs& a) {
    auto lat = load_lattice(a.src);
    const auto& g = lat->group();
    auto c = g.find(Perm::parse_cycles(g.degree(), a.conjugation));
    if (!c) throw Error(Errc::InvalidArgument, "conjugation " + a.conjugation + " is not in " + g.name());
    return defects::make_context(lat, defects::parse_base(a.base), *c, 0, a.base_degree);
}

ojson context_doc(const defects::FieldContext& ctx, const DefectArgs& a) {
    return {{"group", group_doc(ctx.lat().group())},
            {"base", defects::base_name(ctx.base)},
            {"base_degree", ctx.base_degree},
            {"conjugation", a.conjugation}};
}

defects::Fact parse_fact(const defects::FieldContext& ctx, const std::string& s) {
    auto le = s.find("<=");
    auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(Errc::ParseError, "fact must look like C1=2 or S3<=1: " + s);
    bool is_le = le != std::string::npos && le + 1 == eq;
    std::string label = s.substr(0, is_le ? le : eq);
    std::string value = s.substr(eq + 1);
    // d(C1)=2 is accepted as well
    if (label.size() > 3 && label.rfind("d(", 0) == 0 && label.back() == ')') label = label.substr(2, label.size() - 3);
    long v = 0;
    try {
        std::size_t used = 0;
        v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
        throw Error(Errc::ParseError, "bad fact value in " + s);
    }
    return {class_by_label(ctx.lat(), label), is_le ? defects::Fact::Op::Le : defects::Fact::Op::Eq, v};
}

CommandResult defect_relations_cmd(const DefectArgs& a) {
    auto ctx = context_of(a);
    auto rels = defects::defect_relations(ctx);
    ojson p = context_doc(ctx, a);
    ojson list = ojson::array();
    std::ostringstream sum;
    for (const auto& r : rels) {
        ojson terms = ojson::array();
        for (const auto& [c, v] : r.terms) terms.push_back({{"class", ctx.lat().class_label(c)}, {"coeff", q_str(v)}});
        auto text = defects::format_relation(ctx.lat(), r);
        list.push_back({{"terms", terms}, {"text", text}, {"provenance", r.provenance}});
        sum << text << "    [" << r.provenance << "]\n";
    }
    if (rels.empty()) sum << "no defect relations\n";
    p["relations"] = list;
    return ok_result("defects relations", p, sum.str());
}

CommandResult defect_solve_cmd(const DefectArgs& a) {
    auto ctx = context_of(a);
    std::vector<defects::Fact> facts;
    for (const auto& f : a.facts) facts.push_back(parse_fact(ctx, f));
    auto res = defects::solve_defects(ctx, facts, a.max_solutions);
    const auto& lat = ctx.lat();
    ojson p = context_doc(ctx, a);
    p["facts"] = a.facts;
    ojson bounds = ojson::object();
    for (std::size_t c = 0; c < lat.num_classes(); ++c) bounds[lat.class_label(c)] = res.upper_bounds[c];
    p["upper_bounds"] = bounds;
    ojson sols = ojson::array();
    std::ostringstream sum;
    for (const auto& asg : res.assignments) {
        ojson row = ojson::object();
        for (std::size_t c = 0; c < lat.num_classes(); ++c) {
            row[lat.class_label(c)] = asg.values[c];
            sum << (c ? "  " : "") << "d(" << lat.class_label(c) << ")=" << asg.values[c];
        }
        sum << "\n";
        sols.push_back(row);
    }
    p["assignments"] = sols;
    p["unique"] = res.assignments.size() == 1;
    p["truncated"] = res.truncated;
    p["notes"] = res.notes;
    auto r = ok_result("defects solve", p, "");
    if (!res.feasible()) {
        r.status = Status::Error;
        r.payload["error"] = errc_name(Errc::EmptyFeasibleSet);
        r.human_summary = "no defect assignment satisfies the facts\n";
        return r;
    }
    if (res.truncated) r.status = Status::Inconclusive;
    r.human_summary = std::to_string(res.assignments.size()) + (res.assignments.size() == 1 ? " assignment" : " assignments") +
                      (res.truncated ? " (truncated)" : "") + "\n" + sum.str();
    return r;
}

CommandResult defect_plan_cmd(const DefectArgs& a) {
    auto ctx = context_of(a);
    auto plan = defects::reduction_plan(ctx);
    const auto& lat = ctx.lat();
    ojson p = context_doc(ctx, a);
    p["tag"] = defects::plan_tag_name(plan.tag);
    ojson cls = ojson::array();
    for (auto c : plan.classes) cls.push_back(lat.class_label(c));
    p["suffices"] = cls;
    ojson dropped = ojson::array();
    for (const auto& [c, why] : plan.dropped) dropped.push_back({{"class", lat.class_label(c)}, {"reason", why}});
    p["dropped"] = dropped;
    p["justification"] = plan.justification;
    std::ostringstream sum;
    sum << defects::plan_tag_name(plan.tag) << ": Leo for the fixed fields of";
    for (auto c : plan.classes) sum << " " << lat.class_label(c);
    sum << " suffices\n  " << plan.justification << "\n";
    return ok_result("defects plan", p, sum.str());
}

}  // namespace

void register_group_verbs(CLI::App& app, const Globals&, Action& action) {
    auto* group = app.add_subcommand("group", "inspect a permutation group");
    group->require_subcommand(1);
    {
        auto src = std::make_shared<GroupSource>();
        auto* show = group->add_subcommand("show", "order, classes and subgroup lattice");
        add_group_source(show, *src);
        show->callback([src, &action] { action = [src] { return group_show(*src); }; });
    }

    auto* rel = app.add_subcommand("relations", "derive and verify Brauer and idempotent relations");
    rel->require_subcommand(1);
    {
        auto a = std::make_shared<DeriveArgs>();
        auto* d = rel->add_subcommand("derive", "derive a relation");
        add_group_source(d, a->src);
        d->add_option("--method", a->method, "relation construction")
            ->required()
            ->check(CLI::IsMember({"gilman", "artin", "cover", "partition", "kani", "frobenius"}));
        d->add_option("--subgroup", a->subgroup, "gilman: non-cyclic subgroup class to expand at");
        d->add_option("--subgroups", a->subgroups, "cover, partition, kani: class labels, C2a or C2a#k")->delimiter(',');
        d->callback([a, &action] { action = [a] { return derive(*a); }; });
    }
    {
        auto file = std::make_shared<std::string>();
        auto* v = rel->add_subcommand("verify", "re-verify relation documents from a JSON file");
        v->add_option("FILE", *file, "relation JSON")->required();
        v->callback([file, &action] { action = [file] { return verify_file(*file); }; });
    }

    auto* ch = app.add_subcommand("chars", "character data");
    ch->require_subcommand(1);
    {
        auto src = std::make_shared<GroupSource>();
        auto* t = ch->add_subcommand("table", "irreducible character degrees and kernels");
        add_group_source(t, *src);
        t->callback([src, &action] { action = [src] { return chars_table(*src); }; });
    }

    auto* def = app.add_subcommand("defects", "Leopoldt defect relations and constraint solving");
    def->require_subcommand(1);
    auto add_ctx = [](CLI::App* s, DefectArgs& a) {
        add_group_source(s, a.src);
        s->add_option("--base", a.base, "base field: Q, iq (imaginary quadratic) or other");
        s->add_option("--conjugation", a.conjugation, "complex conjugation in cycle notation");
        s->add_option("--base-degree", a.base_degree, "degree of a totally real base for --base other");
    };
    {
        auto a = std::make_shared<DefectArgs>();
        auto* s = def->add_subcommand("relations", "linear relations between defects of fixed fields");
        add_ctx(s, *a);
        s->callback([a, &action] { action = [a] { return defect_relations_cmd(*a); }; });
    }
    {
        auto a = std::make_shared<DefectArgs>();
        auto* s = def->add_subcommand("solve", "all defect assignments consistent with the facts");
        add_ctx(s, *a);
        s->add_option("--fact", a->facts, "C1=2 or S3<=1; repeatable");
        s->add_option("--max-solutions", a->max_solutions, "enumeration cap");
        s->callback([a, &action] { action = [a] { return defect_solve_cmd(*a); }; });
    }
    {
        auto a = std::make_shared<DefectArgs>();
        auto* s = def->add_subcommand("plan", "which subfields suffice for Leopoldt in the top field");
        add_ctx(s, *a);
        s->callback([a, &action] { action = [a] { return defect_plan_cmd(*a); }; });
    }
}

}  // namespace leo::cli
