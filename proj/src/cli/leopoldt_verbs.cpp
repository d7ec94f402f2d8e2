#include <algorithm>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "leo/error.hpp"
#include "leo/families.hpp"
#include "leo/leopoldt_bs.hpp"
#include "leo/poly.hpp"

namespace leo::cli {

namespace {

using families::FamilySpec;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidArgument, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct FamilySource {
    std::string preset;
    std::string file;
};

void add_family_source(CLI::App* s, FamilySource& f, const char* flag = "--preset") {
    s->add_option(flag, f.preset, "family preset: cubic_s3, nakamula_d8, bs_quintic_a, bs_quintic_b, pure_field[:n:+|-]");
    s->add_option("--family-file", f.file, "user family JSON");
}

FamilySpec load_family(const FamilySource& f) {
    if (!f.file.empty()) return families::family_from_json(read_file(f.file));
    if (f.preset.empty()) throw Error(Errc::InvalidArgument, "a family preset or --family-file is required");
    return families::preset(f.preset);
}

bs::VerifyOptions verify_options(const Globals& g) {
    bs::VerifyOptions o;
    o.max_m = g.max_m;
    o.assume_p_maximal = g.assume_p_maximal;
    return o;
}

std::vector<mpz_class> parse_prepower(const std::string& s) {
    std::vector<mpz_class> out;
    if (s.empty()) return out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        mpz_class v;
        if (v.set_str(item, 10) != 0) throw Error(Errc::ParseError, "bad prepower entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

ojson independence_doc(const nt::IndependenceResult& r) {
    ojson d;
    d["verdict"] = nt::independence_name(r.verdict);
    d["precision_bits"] = r.precision_bits;
    if (!r.minor_columns.empty()) {
        d["minor_columns"] = r.minor_columns;
        d["minor_enclosure"] = {r.minor_lo, r.minor_hi};
    }
    if (!r.relation.empty()) d["relation"] = r.relation;
    if (!r.note.empty()) d["note"] = r.note;
    return d;
}

// Certificate JSON as produced by the engine, embedded as a document.
ojson cert_doc(const bs::VerifyOutcome& out) {
    if (auto* c = std::get_if<bs::LeopoldtCertificate>(&out)) return ojson::parse(bs::to_json(*c));
    if (auto* z = std::get_if<bs::ZpIndependenceCertificate>(&out)) return ojson::parse(bs::to_json(*z));
    return nullptr;
}

CommandResult outcome_result(std::string command, ojson p, const bs::VerifyOutcome& out, const std::string& what,
                             bool partial_requested) {
    std::ostringstream sum;
    Status st = Status::Ok;
    if (auto* c = std::get_if<bs::LeopoldtCertificate>(&out)) {
        p["outcome"] = "leopoldt";
        p["m"] = c->body.m;
        sum << "Leopoldt holds for " << what << ": full rank at level m = " << c->body.m << " (p-maximality: "
            << c->body.p_maximality << ")\n";
    } else if (auto* z = std::get_if<bs::ZpIndependenceCertificate>(&out)) {
        p["outcome"] = "zp-independence";
        p["m"] = z->body.m;
        sum << "units are Z_p-independent for " << what << " at level m = " << z->body.m << "; the unit rank is "
            << z->unit_rank << ", so this does not decide Leopoldt\n";
        if (!partial_requested) st = Status::Inconclusive;
    } else {
        const auto& inc = std::get<bs::Inconclusive>(out);
        p["outcome"] = "inconclusive";
        p["max_m"] = inc.max_m;
        p["note"] = inc.note;
        sum << "inconclusive for " << what << " up to m = " << inc.max_m << ": " << inc.note << "\n";
        st = Status::Inconclusive;
    }
    p["certificate"] = cert_doc(out);
    auto r = ok_result(std::move(command), std::move(p), sum.str());
    r.status = st;
    return r;
}

struct VerifyArgs {
    std::string poly;
    std::vector<std::string> units;
    unsigned long p = 0;
    std::string prepower;
    bool partial = false;
    bool waive = false;
};

CommandResult leopoldt_verify(const Globals& g, const VerifyArgs& a) {
    auto f = nt::parse_poly(a.poly);
    auto order = std::make_shared<const nt::MonogenicOrder>(f);
    std::vector<nt::OrderElem> units;
    for (const auto& u : a.units) units.push_back(nt::OrderElem::from_poly(order, nt::parse_poly(u)));
    bs::BuildOptions bo;
    if (!a.prepower.empty()) bo.prepower = parse_prepower(a.prepower);
    bo.waive_independence = a.waive;
    auto sys = bs::build_unit_system(order, units, a.p, bo);
    auto opt = verify_options(g);
    opt.partial_rank_waiver = a.partial;
    auto out = bs::bs_verify(sys, opt);
    ojson p;
    p["f"] = f.str('x');
    p["p"] = a.p;
    p["units"] = a.units;
    p["unit_rank"] = nt::unit_rank(*order);
    p["independence"] = sys.independence_waived ? ojson("waived") : independence_doc(sys.independence);
    return outcome_result("leopoldt verify", p, out, "Z[x]/(" + f.str('x') + ") at p = " + std::to_string(a.p),
                          a.partial);
}

CommandResult leopoldt_recheck(const std::string& path) {
    auto j = ojson::parse(read_file(path));
    if (j.contains("payload")) j = j["payload"];
    if (j.contains("certificate")) j = j["certificate"];
    auto cert = bs::certificate_from_json(j.dump());
    bs::RecheckResult rr = std::visit([](const auto& c) { return bs::recheck(c); }, cert);
    ojson p;
    p["file"] = path;
    p["claim"] = j.value("claim", "");
    p["verified"] = rr.ok;
    if (!rr.ok) p["reason"] = rr.reason;
    auto r = ok_result("leopoldt recheck", p,
                       rr.ok ? "certificate re-verified from scratch\n" : "certificate rejected: " + rr.reason + "\n");
    if (!rr.ok) {
        r.status = Status::Error;
        r.payload["error"] = errc_name(Errc::ValidationFailed);
    }
    return r;
}

ojson member_doc(const families::MemberReport& m) {
    return {{"t", z_json(m.t)},
            {"signature", {m.signature.r1, m.signature.r2}},
            {"discriminant", z_json(m.discriminant)},
            {"disc_matches_symbolic", m.disc_matches_symbolic},
            {"closure", m.closure},
            {"unit_rank", m.unit_rank}};
}

struct FamilyArgs {
    FamilySource fam;
    std::string t;
    unsigned long p = 0;
    std::string prepower;
};

CommandResult leopoldt_family(const Globals& g, const FamilyArgs& a) {
    auto spec = load_family(a.fam);
    mpz_class t(a.t);
    auto m = families::family_member(spec, t);
    if (m.units.empty())
        throw Error(Errc::InvalidArgument, "family " + spec.name + " ships no units; use leopoldt verify with explicit units");
    bs::BuildOptions bo;
    if (!a.prepower.empty()) bo.prepower = parse_prepower(a.prepower);
    auto sys = bs::build_unit_system(m.order, m.units, a.p, bo);
    auto out = bs::bs_verify(sys, verify_options(g));
    ojson p;
    p["family"] = spec.name;
    p["t"] = z_json(t);
    p["p"] = a.p;
    p["member"] = member_doc(m.report);
    if (auto why = spec.excluded(t, a.p); !why.empty()) p["exclusion_note"] = why;
    if (std::holds_alternative<bs::LeopoldtCertificate>(out)) p["transfer"] = spec.transfer_rule;
    if (!spec.remark.empty()) p["remark"] = spec.remark;
    return outcome_result("leopoldt family", p, out,
                          spec.name + " at t = " + t.get_str() + ", p = " + std::to_string(a.p), false);
}

struct ScanArgs {
    FamilySource fam;
    std::string ts;
    std::string primes;
    bool ignore_exclusions = false;
};

CommandResult leopoldt_scan(const Globals& g, const ScanArgs& a) {
    auto spec = load_family(a.fam);
    auto ts = parse_t_list(a.ts);
    auto ps = parse_prime_list(a.primes);
    if (g.seed_order == "reverse") {
        std::reverse(ts.begin(), ts.end());
        std::reverse(ps.begin(), ps.end());
    }
    families::ScanPolicy pol;
    pol.verify = verify_options(g);
    pol.jobs = g.jobs;
    pol.ignore_exclusions = a.ignore_exclusions;
    auto res = families::family_scan(spec, ts, ps, pol);
    std::map<std::string, int> counts;
    std::ostringstream sum;
    for (const auto& e : res) {
        ++counts[e.status];
        sum << "t=" << e.t << " p=" << e.p << "  " << e.status;
        if (e.certificate) sum << " m=" << e.certificate->body.m;
        if (!e.certificate && !e.reason.empty()) sum << "  (" << e.reason << ")";
        sum << "\n";
    }
    ojson p;
    p["family"] = spec.name;
    p["entries"] = ojson::parse(families::to_json(res));
    p["counts"] = counts;
    auto r = ok_result("leopoldt scan", p, sum.str());
    if (counts.count("inconclusive")) r.status = Status::Inconclusive;
    return r;
}

struct PropagateArgs {
    FamilySource fam;
    std::string t0;
    unsigned long p = 0;
    std::size_t members = 3;
    unsigned external_m = 0;
    std::string provenance = "cited computation";
};

CommandResult leopoldt_propagate(const Globals& g, const PropagateArgs& a) {
    auto spec = load_family(a.fam);
    mpz_class t0(a.t0);
    bs::FamilyCertificate fc;
    auto opt = verify_options(g);
    if (a.external_m) {
        fc = bs::bs_transfer_external(spec, t0, a.p, a.external_m, a.provenance);
    } else {
        auto m = families::family_member(spec, t0);
        auto sys = bs::build_unit_system(m.order, m.units, a.p);
        auto out = bs::bs_verify(sys, opt);
        auto* cert = std::get_if<bs::LeopoldtCertificate>(&out);
        if (!cert) {
            ojson p{{"family", spec.name}, {"t0", z_json(t0)}, {"p", a.p}};
            return outcome_result("leopoldt propagate", p, out, "the anchor", false);
        }
        fc = bs::bs_transfer(spec, t0, a.p, *cert);
    }
    bs::verify_members(spec, fc, a.members, opt);
    bool all = std::all_of(fc.members.begin(), fc.members.end(), [](const auto& m) { return m.ok; });
    std::ostringstream sum;
    sum << spec.name << ": Leo(F_t, " << a.p << ") for all t = " << fc.t0 << " mod " << fc.modulus << " (anchor: "
        << fc.anchor << ")\n";
    for (const auto& m : fc.members)
        sum << "  t=" << m.t << (m.ok ? "  re-verified" : "  FAILED") << (m.m ? " m=" + std::to_string(m.m) : "")
            << (m.detail.empty() ? "" : "  " + m.detail) << "\n";
    auto r = ok_result("leopoldt propagate", ojson::parse(bs::to_json(fc)), sum.str());
    if (!all) {
        r.status = Status::Error;
        r.payload["error"] = errc_name(Errc::ValidationFailed);
    }
    return r;
}

// "0 mod 10", "0:10" or just the residue with --modulus.
std::pair<mpz_class, mpz_class> parse_class(const std::string& s, const std::string& modulus) {
    std::string res = s, mod = modulus;
    if (auto k = s.find("mod"); k != std::string::npos) {
        res = s.substr(0, k);
        mod = s.substr(k + 3);
    } else if (auto c = s.find(':'); c != std::string::npos) {
        res = s.substr(0, c);
        mod = s.substr(c + 1);
    }
    auto trim = [](std::string x) {
        x.erase(0, x.find_first_not_of(' '));
        x.erase(x.find_last_not_of(' ') + 1);
        return x;
    };
    mpz_class a, m;
    if (a.set_str(trim(res), 10) != 0 || m.set_str(trim(mod), 10) != 0 || m <= 0)
        throw Error(Errc::ParseError, "residue class must look like '0 mod 10'");
    return {a, m};
}

struct InfinitudeArgs {
    FamilySource fam;
    std::string cls;
    std::string modulus;
    std::size_t count = 5;
    std::string range = "10000";
    std::size_t odd_valuation = 0;
};

CommandResult infinitude_cmd(const InfinitudeArgs& a) {
    auto spec = load_family(a.fam);
    auto [t0, mod] = parse_class(a.cls, a.modulus);
    mpz_class bound(a.range);
    ojson p;
    std::ostringstream sum;
    if (a.odd_valuation) {
        auto found = bs::odd_valuation_primes(spec.disc_poly, mod, t0, bound, a.odd_valuation);
        ojson list = ojson::array();
        for (const auto& o : found) list.push_back({{"prime", z_json(o.prime)}, {"t", z_json(o.k)}, {"valuation", o.valuation}});
        p["family"] = spec.name;
        p["disc_poly"] = spec.disc_poly.str('t');
        p["class"] = {z_json(t0), z_json(mod)};
        p["odd_valuation_primes"] = list;
        sum << found.size() << " primes at odd valuation in " << spec.disc_poly.str('t') << " for t = " << t0 << " mod "
            << mod << ":";
        for (const auto& o : found) sum << " " << o.prime;
        sum << "\n";
        return ok_result("infinitude", p, sum.str());
    }
    auto rep = bs::infinitude_certificate(spec, t0, mod, a.count, bound);
    sum << rep.members.size() << " pairwise distinct members of " << spec.name << " in t = " << rep.t0 << " mod "
        << rep.modulus << ":\n";
    for (const auto& m : rep.members)
        sum << "  t=" << m.t << "  " << m.prime << "^" << m.valuation << " || disc, ramified only in this member\n";
    return ok_result("infinitude", ojson::parse(bs::to_json(rep)), sum.str());
}

struct OrchestrateArgs {
    std::string primes;
    std::vector<std::string> anchors;
    std::size_t count = 5;
};

families::Anchor parse_anchor(const std::string& s) {
    // t0:p:m:provenance
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string item;
    while (parts.size() < 3 && std::getline(in, item, ':')) parts.push_back(item);
    std::string rest;
    std::getline(in, rest);
    if (parts.size() != 3) throw Error(Errc::ParseError, "anchor must look like t0:p:m[:provenance]");
    try {
        return {mpz_class(parts[0]), std::stoul(parts[1]), static_cast<unsigned>(std::stoul(parts[2])),
                rest.empty() ? "cited computation" : rest};
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "bad anchor '" + s + "'");
    }
}

CommandResult orchestrate_cmd(const Globals& g, const OrchestrateArgs& a) {
    auto primes = parse_prime_list(a.primes);
    std::vector<families::Anchor> anchors;
    for (const auto& s : a.anchors) anchors.push_back(parse_anchor(s));
    families::ScanPolicy pol;
    pol.verify = verify_options(g);
    pol.jobs = g.jobs;
    auto res = families::orchestrate_prime_set(primes, anchors, a.count, pol);
    std::ostringstream sum;
    sum << "cubic_s3: t = " << res.residue << " mod " << res.modulus << " gives Leo(F_t, p) for p in {";
    for (std::size_t i = 0; i < res.primes.size(); ++i) sum << (i ? ", " : "") << res.primes[i];
    sum << "}\n";
    for (const auto& an : res.anchors) sum << "  p=" << an.p << " by transfer, anchor " << an.anchor << "\n";
    std::size_t good = std::count_if(res.samples.begin(), res.samples.end(),
                                     [](const auto& e) { return e.status == "certified" || e.status == "transferred"; });
    sum << "  samples ok: " << good << "/" << res.samples.size() << "\n";
    sum << "  distinct members: " << res.infinitude.members.size() << "\n";
    auto r = ok_result("orchestrate", ojson::parse(families::to_json(res)), sum.str());
    if (!res.all_samples_ok()) {
        r.status = Status::Error;
        r.payload["error"] = errc_name(Errc::ValidationFailed);
    }
    return r;
}

}  // namespace

void register_leopoldt_verbs(CLI::App& app, const Globals& g, Action& action) {
    auto* leo = app.add_subcommand("leopoldt", "certify Leopoldt's conjecture for a number field and prime");
    leo->require_subcommand(1);
    {
        auto a = std::make_shared<VerifyArgs>();
        auto* s = leo->add_subcommand("verify", "run the filtration criterion on explicit units");
        s->add_option("--poly", a->poly, "monic irreducible f, e.g. x^3-100x-1")->required();
        s->add_option("--units", a->units, "unit as a polynomial in x; repeatable")->required();
        s->add_option("-p,--prime", a->p, "prime")->required();
        s->add_option("--prepower", a->prepower, "exponents k_i with u_i^k_i = 1 mod q, comma separated");
        s->add_flag("--partial-rank", a->partial, "accept fewer units than the unit rank (Z_p-independence only)");
        s->add_flag("--waive-independence", a->waive, "skip the certified independence check");
        s->callback([&g, a, &action] { action = [&g, a] { return leopoldt_verify(g, *a); }; });
    }
    {
        auto file = std::make_shared<std::string>();
        auto* s = leo->add_subcommand("recheck", "re-verify a certificate JSON from scratch");
        s->add_option("FILE", *file, "certificate or leopoldt command output")->required();
        s->callback([file, &action] { action = [file] { return leopoldt_recheck(*file); }; });
    }
    {
        auto a = std::make_shared<FamilyArgs>();
        auto* s = leo->add_subcommand("family", "verify one member of a family");
        add_family_source(s, a->fam);
        s->add_option("--t", a->t, "family parameter")->required();
        s->add_option("-p,--prime", a->p, "prime")->required();
        s->add_option("--prepower", a->prepower, "exponents k_i, comma separated");
        s->callback([&g, a, &action] { action = [&g, a] { return leopoldt_family(g, *a); }; });
    }
    {
        auto a = std::make_shared<ScanArgs>();
        auto* s = leo->add_subcommand("scan", "verify a grid of parameters and primes");
        add_family_source(s, a->fam);
        s->add_option("--t", a->ts, "parameters: a..b or a,b,c")->required();
        s->add_option("-p,--primes", a->primes, "primes, comma separated")->required();
        s->add_flag("--ignore-exclusions", a->ignore_exclusions, "also run pairs the family excludes");
        s->callback([&g, a, &action] { action = [&g, a] { return leopoldt_scan(g, *a); }; });
    }
    {
        auto a = std::make_shared<PropagateArgs>();
        auto* s = leo->add_subcommand("propagate", "transfer a verified member to its congruence class");
        add_family_source(s, a->fam);
        s->add_option("--t0", a->t0, "anchor parameter")->required();
        s->add_option("-p,--prime", a->p, "prime")->required();
        s->add_option("--members", a->members, "sampled members to re-verify");
        s->add_option("--external-m", a->external_m, "take the anchor as an external fact at this level");
        s->add_option("--provenance", a->provenance, "provenance of an external anchor");
        s->callback([&g, a, &action] { action = [&g, a] { return leopoldt_propagate(g, *a); }; });
    }
    {
        auto a = std::make_shared<InfinitudeArgs>();
        auto* s = app.add_subcommand("infinitude", "pairwise distinct family members in a residue class");
        add_family_source(s, a->fam, "--family");
        s->add_option("--class", a->cls, "residue class, e.g. '0 mod 10'")->required();
        s->add_option("--modulus", a->modulus, "modulus when --class is a bare residue");
        s->add_option("--count", a->count, "members wanted");
        s->add_option("--range", a->range, "search bound on t");
        s->add_option("--odd-valuation", a->odd_valuation, "list this many primes at odd valuation in the discriminant");
        s->callback([a, &action] { action = [a] { return infinitude_cmd(*a); }; });
    }
    {
        auto a = std::make_shared<OrchestrateArgs>();
        auto* s = app.add_subcommand("orchestrate", "cubic family members satisfying Leopoldt at a finite prime set");
        s->add_option("--primes", a->primes, "primes, comma separated")->required();
        s->add_option("--anchor", a->anchors, "external anchor t0:p:m[:provenance]; repeatable");
        s->add_option("--count", a->count, "samples per prime");
        s->callback([&g, a, &action] { action = [&g, a] { return orchestrate_cmd(g, *a); }; });
    }
}

}  // namespace leo::cli
