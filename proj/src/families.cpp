#include "leo/families.hpp"

#include <algorithm>
#include <atomic>
#include <json.hpp>
#include <mutex>
#include <set>
#include <thread>

#include "leo/error.hpp"
#include "leo/factor.hpp"
#include "leo/sturm.hpp"

namespace leo::families {

using nt::BiPoly;
using nt::IntPoly;
using json = nlohmann::ordered_json;

namespace {

IntPoly ypoly(std::vector<mpz_class> c) { return IntPoly(std::move(c)); }

std::string p_divides_t_exclusion(const mpz_class& t, unsigned long p) {
    if (p == 3) return "p = 3 needs an anchor for this family";
    if (!mpz_divisible_ui_p(t.get_mpz_t(), p)) return "p does not divide t";
    return "";
}

FamilySpec cubic_s3() {
    FamilySpec s;
    s.name = "cubic_s3";
    s.f = BiPoly({ypoly({-1}), ypoly({0, 0, -1}), IntPoly(), ypoly({1})});
    s.units = {BiPoly::z(), BiPoly::z() + BiPoly::y()};
    s.disc_poly = ypoly({-27, 0, 0, 0, 0, 0, 4});
    s.domain_min = 2;
    s.closure_group = "S3";
    s.transfer_rule = "cubic-subfield: Leo for a cubic subfield of an S3 closure gives Leo for the closure";
    s.exclusion_text = "p == 3 || p does not divide t";
    s.exclusion = p_divides_t_exclusion;
    return s;
}

FamilySpec nakamula_d8() {
    FamilySpec s;
    s.name = "nakamula_d8";
    s.f = BiPoly({ypoly({1}), ypoly({0, 1}), ypoly({-1}), ypoly({0, -1}), ypoly({1})});
    s.units = {BiPoly::z() - BiPoly::constant(1), BiPoly::z(), BiPoly::z() + BiPoly::constant(1)};
    IntPoly a = ypoly({-4, 0, 1});
    s.disc_poly = a * a * ypoly({9, 0, 4});
    s.domain_min = 7;
    s.closure_group = "D8";
    s.transfer_rule = "quartic-subfield: Leo for a non-Galois quartic subfield of a D8 closure gives Leo for the closure";
    s.exclusion_text = "none";
    s.remark = "9 divides disc(f_t) for every t, so p = 3 needs the p-maximality override";
    return s;
}

FamilySpec quintic(const std::string& name, const mpz_class& a_coeff) {
    // z^5 + a y^4 z + 1; disc(x^5 + c x + b) = 4^4 c^5 + 5^5 b^4
    FamilySpec s;
    s.name = name;
    s.f = BiPoly({ypoly({1}), IntPoly::monomial(4, a_coeff), IntPoly(), IntPoly(), IntPoly(), ypoly({1})});
    mpz_class a5 = a_coeff * a_coeff * a_coeff * a_coeff * a_coeff;
    s.disc_poly = IntPoly::monomial(20, 256 * a5) + IntPoly::constant(3125);
    s.domain_min = 1;
    s.transfer_rule = "none";
    s.exclusion_text = "none";
    s.remark = "units are not built in; supply unit polynomials";
    return s;
}

// Newton interpolation over Q of disc(f(t, z)) as a polynomial in t.
IntPoly interpolate_disc(const BiPoly& f) {
    int n = f.degree_z();
    int dy = 0;
    for (const auto& c : f.z_coeffs()) dy = std::max(dy, c.degree());
    int bound = (2 * n - 2) * dy;
    std::vector<mpq_class> xs, coef;
    for (int i = 0; i <= bound; ++i) {
        xs.emplace_back(i);
        coef.emplace_back(nt::discriminant(f.at(i)));
    }
    for (int j = 1; j <= bound; ++j)
        for (int i = bound; i >= j; --i) {
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
        }
    // expand Newton form
    std::vector<mpq_class> poly{coef[bound]};
    for (int i = bound - 1; i >= 0; --i) {
        std::vector<mpq_class> next(poly.size() + 1);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= poly[k] * xs[i];
        }
        next[0] += coef[i];
        poly = next;
    }
    std::vector<mpz_class> out;
    for (auto& q : poly) {
        q.canonicalize();
        if (q.get_den() != 1) throw Error(Errc::ValidationFailed, "interpolated discriminant is not integral");
        out.push_back(q.get_num());
    }
    return IntPoly(std::move(out));
}

bool is_square(const mpz_class& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()); }

bool splits_over(const mpz_class& disc, const mpz_class& delta) {
    return disc == 0 || is_square(disc) || is_square(disc * delta);
}

std::vector<mpz_class> integer_roots(const IntPoly& f) {
    IntPoly g = f.primitive();
    if (!nt::squarefree(g)) g = nt::exact_div(g, nt::gcd_q(g, g.derivative()));
    std::vector<mpz_class> out;
    for (const auto& iv : nt::real_roots(g)) {
        auto r = nt::refine(g, iv, 4);
        mpz_class lo, hi;
        mpz_fdiv_q(lo.get_mpz_t(), r.lo.get_num_mpz_t(), r.lo.get_den_mpz_t());
        mpz_cdiv_q(hi.get_mpz_t(), r.hi.get_num_mpz_t(), r.hi.get_den_mpz_t());
        for (mpz_class k = lo; k <= hi; ++k)
            if (g.eval(k) == 0 && std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
    return out;
}

}  // namespace

std::string cubic_closure(const IntPoly& f) {
    if (f.degree() != 3 || !nt::irreducible_over_q(f)) return "reducible";
    return is_square(nt::discriminant(f)) ? "C3" : "S3";
}

std::string quartic_closure(const IntPoly& f) {
    if (f.degree() != 4 || !f.is_monic() || !nt::irreducible_over_q(f)) return "reducible";
    mpz_class a = f.coeff(3), b = f.coeff(2), c = f.coeff(1), d = f.coeff(0);
    IntPoly r({-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1});
    mpz_class delta = nt::discriminant(f);
    auto roots = integer_roots(r);
    if (roots.empty()) return is_square(delta) ? "A4" : "S4";
    if (roots.size() == 3) return "V4";
    mpz_class x = roots[0];
    bool c4 = splits_over(x * x - 4 * d, delta) && splits_over(a * a - 4 * (b - x), delta);
    return c4 ? "C4" : "D8";
}

FamilySpec pure_field(int n, int sign) {
    if (n < 2) throw Error(Errc::InvalidArgument, "pure field degree must be at least 2");
    if (sign != 1 && sign != -1) throw Error(Errc::InvalidArgument, "sign must be +1 or -1");
    FamilySpec s;
    s.name = "pure_field:" + std::to_string(n) + ":" + (sign > 0 ? "+" : "-");
    IntPoly a = IntPoly::monomial(n) + IntPoly::constant(sign);  // y^n + sign
    std::vector<IntPoly> zc(n + 1);
    zc[0] = -a;
    zc[n] = IntPoly::constant(1);
    s.f = BiPoly(zc);
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        std::vector<IntPoly> uc(d + 1);
        uc[0] = -IntPoly::monomial(d);
        uc[d] = IntPoly::constant(1);
        s.units.push_back(BiPoly(uc));
    }
    // disc(x^n + c) = (-1)^(n(n-1)/2) n^n c^(n-1) with c = -a
    IntPoly disc = IntPoly::constant(1);
    for (int i = 0; i < n - 1; ++i) disc = disc * (-a);
    mpz_class nn;
    mpz_ui_pow_ui(nn.get_mpz_t(), n, n);
    if ((n * (n - 1) / 2) % 2) nn = -nn;
    s.disc_poly = disc.scaled(nn);
    s.domain_min = 2;
    s.transfer_rule = "none";
    s.exclusion_text = "none";
    return s;
}

FamilySpec preset(const std::string& name) {
    if (name == "cubic_s3") return cubic_s3();
    if (name == "nakamula_d8") return nakamula_d8();
    if (name == "bs_quintic_a") return quintic(name, 4);
    if (name == "bs_quintic_b") return quintic(name, -1);
    if (name == "pure_field") return pure_field(3, 1);
    if (name.rfind("pure_field:", 0) == 0) {
        auto rest = name.substr(11);
        auto colon = rest.find(':');
        try {
            int n = std::stoi(rest.substr(0, colon));
            int sign = 1;
            if (colon != std::string::npos) {
                std::string sg = rest.substr(colon + 1);
                if (sg == "-") sign = -1;
                else if (sg != "+") throw Error(Errc::UnknownPreset, "bad sign in " + name);
            }
            return pure_field(n, sign);
        } catch (const std::logic_error&) {
            throw Error(Errc::UnknownPreset, "bad pure_field parameters in " + name);
        }
    }
    throw Error(Errc::UnknownPreset, "unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"cubic_s3", "nakamula_d8", "bs_quintic_a", "bs_quintic_b", "pure_field"};
}

namespace {

BiPoly bipoly_from_json(const json& j) {
    std::vector<IntPoly> zc;
    for (const auto& yc : j) {
        std::vector<mpz_class> c;
        for (const auto& x : yc) c.emplace_back(x.is_string() ? x.get<std::string>() : std::to_string(x.get<long long>()));
        zc.emplace_back(std::move(c));
    }
    return BiPoly(std::move(zc));
}

}  // namespace

FamilySpec family_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        FamilySpec s;
        s.name = j.value("name", "user");
        s.f = bipoly_from_json(j.at("f"));
        if (!s.f.monic_in_z()) throw Error(Errc::InvalidArgument, "family polynomial must be monic in z");
        for (const auto& u : j.value("units", json::array())) s.units.push_back(bipoly_from_json(u));
        std::string dom = j.value("domain", "t>=1");
        auto ge = dom.find(">=");
        if (ge == std::string::npos) throw Error(Errc::ParseError, "domain must read t>=N");
        s.domain_min = mpz_class(dom.substr(ge + 2));
        s.transfer_rule = j.value("transfer", "none");
        s.exclusion_text = j.value("exclusions", "none");
        std::vector<unsigned long> banned;
        bool need_divides = false;
        std::string ex = s.exclusion_text;
        std::size_t pos = 0;
        while (pos < ex.size()) {
            std::size_t bar = ex.find("||", pos);
            std::string term = ex.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
            term.erase(std::remove(term.begin(), term.end(), ' '), term.end());
            if (term.rfind("p==", 0) == 0) banned.push_back(std::stoul(term.substr(3)));
            else if (term == "p\xe2\x88\xa4t" || term == "p!|t") need_divides = true;
            else if (term != "none" && !term.empty()) throw Error(Errc::ParseError, "unsupported exclusion '" + term + "'");
            if (bar == std::string::npos) break;
            pos = bar + 2;
        }
        s.exclusion = [banned, need_divides](const mpz_class& t, unsigned long p) -> std::string {
            if (std::find(banned.begin(), banned.end(), p) != banned.end()) return "p = " + std::to_string(p) + " excluded";
            if (need_divides && !mpz_divisible_ui_p(t.get_mpz_t(), p)) return "p does not divide t";
            return "";
        };
        s.disc_poly = interpolate_disc(s.f);
        int n = s.f.degree_z();
        if (n == 3) s.closure_group = j.value("closure", "");
        if (n == 4) s.closure_group = j.value("closure", "");
        return s;
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("family file: ") + e.what());
    }
}

Member family_member(const FamilySpec& spec, const mpz_class& t) {
    if (!spec.in_domain(t))
        throw Error(Errc::OutOfDomain, spec.name + " needs t >= " + spec.domain_min.get_str() + ", got " + t.get_str());
    IntPoly f = spec.f.at(t);
    Member m;
    m.order = std::make_shared<const nt::MonogenicOrder>(f);
    m.report.t = t;
    m.report.signature = nt::signature(f);
    m.report.discriminant = m.order->discriminant();
    m.report.disc_matches_symbolic = spec.disc_poly.eval(t) == m.report.discriminant;
    if (!m.report.disc_matches_symbolic)
        throw Error(Errc::ValidationFailed, "symbolic discriminant disagrees at t = " + t.get_str());
    m.report.unit_rank = m.report.signature.r1 + m.report.signature.r2 - 1;
    if (!spec.closure_group.empty()) {
        m.report.closure = f.degree() == 3 ? cubic_closure(f) : f.degree() == 4 ? quartic_closure(f) : "";
        if (m.report.closure != spec.closure_group)
            throw Error(Errc::GaloisTypeMismatch,
                        "closure of f_" + t.get_str() + " is " + m.report.closure + ", expected " + spec.closure_group);
    }
    for (const auto& s : spec.units) m.units.push_back(nt::OrderElem::from_poly(m.order, s.at(t)));
    return m;
}

namespace {

ScanEntry scan_one(const FamilySpec& spec, const mpz_class& t, unsigned long p, const ScanPolicy& policy) {
    ScanEntry e;
    e.t = t;
    e.p = p;
    if (!policy.ignore_exclusions) {
        std::string why = spec.excluded(t, p);
        if (!why.empty()) {
            e.status = "skipped";
            e.reason = why;
            return e;
        }
    }
    if (spec.units.empty()) {
        e.status = "skipped";
        e.reason = "family has no built-in units";
        return e;
    }
    try {
        Member m = family_member(spec, t);
        bs::UnitSystem sys = bs::build_unit_system(m.order, m.units, p);
        auto out = bs::bs_verify(sys, policy.verify);
        if (auto* c = std::get_if<bs::LeopoldtCertificate>(&out)) {
            e.status = "certified";
            e.reason = "m = " + std::to_string(c->body.m);
            e.certificate = *c;
            if (spec.transfer_rule != "none")
                e.transfer = "Leo(closure " + spec.closure_group + ", " + std::to_string(p) + ") by " + spec.transfer_rule;
        } else if (std::holds_alternative<bs::ZpIndependenceCertificate>(out)) {
            e.status = "zp-only";
            e.reason = "units below full rank";
        } else {
            e.status = "inconclusive";
            e.reason = std::get<bs::Inconclusive>(out).note;
        }
    } catch (const Error& err) {
        e.status = "skipped";
        e.reason = std::string(errc_name(err.code())) + ": " + err.what();
    }
    return e;
}

}  // namespace

std::vector<ScanEntry> family_scan(const FamilySpec& spec, const std::vector<mpz_class>& ts,
                                   const std::vector<unsigned long>& primes, const ScanPolicy& policy) {
    std::vector<std::pair<mpz_class, unsigned long>> work;
    for (const auto& t : ts)
        for (auto p : primes) work.emplace_back(t, p);
    std::sort(work.begin(), work.end());
    work.erase(std::unique(work.begin(), work.end()), work.end());
    std::vector<ScanEntry> out(work.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < work.size();)
            out[i] = scan_one(spec, work[i].first, work[i].second, policy);
    };
    unsigned jobs = std::max(1u, std::min<unsigned>(policy.jobs, static_cast<unsigned>(work.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

bool OrchestrationResult::all_samples_ok() const {
    if (samples.empty()) return false;
    return std::all_of(samples.begin(), samples.end(),
                       [](const ScanEntry& e) { return e.status == "certified" || e.status == "transferred"; });
}

OrchestrationResult orchestrate_prime_set(const std::vector<unsigned long>& primes0, std::vector<Anchor> anchors,
                                          std::size_t count, const ScanPolicy& policy) {
    FamilySpec spec = cubic_s3();
    std::set<unsigned long> pset(primes0.begin(), primes0.end());
    if (pset.empty()) throw Error(Errc::InvalidArgument, "empty prime set");
    for (auto p : pset)
        if (!bs::is_prime(p)) throw Error(Errc::InvalidArgument, std::to_string(p) + " is not prime");
    OrchestrationResult res;
    res.primes.assign(pset.begin(), pset.end());
    mpz_class k = 1;
    for (auto p : pset)
        if (p != 3) k *= p;
    res.residue = 0;
    res.modulus = k;
    std::optional<bs::FamilyCertificate> three;
    if (pset.count(3)) {
        auto it = std::find_if(anchors.begin(), anchors.end(), [](const Anchor& a) { return a.p == 3; });
        if (it != anchors.end()) {
            three = bs::bs_transfer_external(spec, it->t0, 3, it->m, it->provenance);
        } else {
            // First-party attempt at t0 = 2 before giving up.
            try {
                Member m = family_member(spec, 2);
                bs::UnitSystem sys = bs::build_unit_system(m.order, m.units, 3);
                auto out = bs::bs_verify(sys, policy.verify);
                if (auto* c = std::get_if<bs::LeopoldtCertificate>(&out)) three = bs::bs_transfer(spec, 2, 3, *c);
            } catch (const Error&) {
            }
            if (!three) throw Error(Errc::MissingAnchor, "3 is in P but no anchor for p = 3 was supplied or certified");
        }
        // t = 0 mod k and t = t0 mod 3^m
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), k.get_mpz_t(), three->modulus.get_mpz_t());
        mpz_class s = k * ((three->t0 * inv) % three->modulus);
        res.modulus = k * three->modulus;
        mpz_fdiv_r(res.residue.get_mpz_t(), s.get_mpz_t(), res.modulus.get_mpz_t());
        res.anchors.push_back(*three);
    }
    std::vector<mpz_class> ts;
    for (mpz_class t = res.residue; ts.size() < count; t += res.modulus)
        if (spec.in_domain(t)) ts.push_back(t);
    std::vector<unsigned long> direct;
    for (auto p : pset)
        if (p != 3) direct.push_back(p);
    if (!direct.empty()) res.samples = family_scan(spec, ts, direct, policy);
    if (three) {
        for (const auto& t : ts) {
            ScanEntry e;
            e.t = t;
            e.p = 3;
            try {
                Member m = family_member(spec, t);
                if (m.report.unit_rank != static_cast<int>(m.units.size()))
                    throw Error(Errc::RankMismatch, "unit rank differs");
                bs::p_maximality(*m.order, 3, false);
                e.status = "transferred";
                e.reason = "obligations met; anchor " + three->anchor + " at m = " + std::to_string(three->m);
                if (!three->prepower.empty()) {
                    bs::UnitSystem sys = bs::build_unit_system(m.order, m.units, 3, {three->prepower, false});
                    bs::VerifyOptions vo = policy.verify;
                    vo.max_m = three->m;
                    auto out = bs::bs_verify(sys, vo);
                    if (auto* c = std::get_if<bs::LeopoldtCertificate>(&out)) {
                        e.status = "certified";
                        e.reason = "m = " + std::to_string(c->body.m);
                        e.certificate = *c;
                    } else {
                        e.status = "inconclusive";
                        e.reason = "transfer predicted success at m = " + std::to_string(three->m);
                    }
                }
                e.transfer = "Leo(closure S3, 3) by " + spec.transfer_rule;
            } catch (const Error& err) {
                e.status = "skipped";
                e.reason = std::string(errc_name(err.code())) + ": " + err.what();
            }
            res.samples.push_back(std::move(e));
        }
        std::sort(res.samples.begin(), res.samples.end(),
                  [](const ScanEntry& a, const ScanEntry& b) { return std::tie(a.t, a.p) < std::tie(b.t, b.p); });
    }
    res.infinitude = bs::infinitude_certificate(spec, res.residue, res.modulus, count);
    return res;
}

std::string to_json(const ScanEntry& e) {
    json j;
    j["t"] = e.t.get_str();
    j["p"] = e.p;
    j["status"] = e.status;
    j["reason"] = e.reason;
    if (!e.transfer.empty()) j["transfer"] = e.transfer;
    if (e.certificate) j["certificate"] = json::parse(bs::to_json(*e.certificate));
    return j.dump(2);
}

std::string to_json(const std::vector<ScanEntry>& es) {
    json a = json::array();
    for (const auto& e : es) a.push_back(json::parse(to_json(e)));
    return a.dump(2);
}

std::string to_json(const OrchestrationResult& r) {
    json j;
    j["primes"] = r.primes;
    j["class"] = {{"residue", r.residue.get_str()}, {"modulus", r.modulus.get_str()}};
    j["anchors"] = json::array();
    for (const auto& a : r.anchors) j["anchors"].push_back(json::parse(bs::to_json(a)));
    j["samples"] = json::parse(to_json(r.samples));
    j["all_samples_ok"] = r.all_samples_ok();
    j["infinitude"] = json::parse(bs::to_json(r.infinitude));
    return j.dump(2);
}

}  // namespace leo::families
