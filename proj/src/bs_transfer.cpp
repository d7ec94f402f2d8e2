#include <json.hpp>
#include <optional>
#include <set>

#include "leo/error.hpp"
#include "leo/factor.hpp"
#include "leo/leopoldt_bs.hpp"

namespace leo::bs {

using nt::IntPoly;
using nt::OrderElem;
using json = nlohmann::ordered_json;

namespace {

mpz_class ppow(unsigned long p, unsigned long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, k);
    return r;
}

IntPoly poly_pow_mod(const IntPoly& s, const mpz_class& k, const IntPoly& f, const mpz_class& m) {
    IntPoly r = IntPoly::constant(1).mod(m), b = s.rem_monic(f).mod(m);
    mpz_class e = k;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = (r * b).rem_monic(f).mod(m);
        e >>= 1;
        if (e > 0) b = (b * b).rem_monic(f).mod(m);
    }
    return r;
}

std::vector<mpz_class> coords_of(const IntPoly& p, int n) {
    std::vector<mpz_class> c(n);
    for (int i = 0; i < n; ++i) c[i] = p.coeff(i);
    return c;
}

void check_disc(const families::FamilySpec& spec, const mpz_class& t0, unsigned long p) {
    mpz_class d = nt::discriminant(spec.f.at(t0));
    mpz_class p2 = mpz_class(p) * p;
    if (mpz_divisible_p(d.get_mpz_t(), p2.get_mpz_t()))
        throw Error(Errc::DiscriminantObstruction,
                    std::to_string(p) + "^2 divides disc(f_" + t0.get_str() + ") = " + d.get_str());
}

std::vector<std::string> standard_obligations() {
    return {"f_t irreducible over Q", "unit rank of K_t equals the number of units",
            "t inside the family domain"};
}

}  // namespace

FamilyCertificate bs_transfer(const families::FamilySpec& spec, const mpz_class& t0, unsigned long p,
                              const LeopoldtCertificate& cert) {
    if (!spec.in_domain(t0)) throw Error(Errc::OutOfDomain, "t0 = " + t0.get_str() + " outside " + spec.name);
    if (spec.units.empty()) throw Error(Errc::CertificateInsufficient, spec.name + " ships no unit polynomials");
    check_disc(spec, t0, p);
    const CertificateBody& b = cert.body;
    IntPoly ft = spec.f.at(t0);
    if (b.p != p) throw Error(Errc::CertificateInsufficient, "certificate is for a different prime");
    if (!(b.f == ft)) throw Error(Errc::CertificateInsufficient, "certificate is for a different polynomial");
    if (b.units.size() != spec.units.size()) throw Error(Errc::CertificateInsufficient, "unit count differs");
    for (std::size_t i = 0; i < spec.units.size(); ++i)
        if (coords_of(spec.units[i].at(t0).rem_monic(ft), ft.degree()) != b.units[i])
            throw Error(Errc::CertificateInsufficient, "certificate units are not the family units at t0");
    RecheckResult rc = recheck(cert);
    if (!rc.ok) throw Error(Errc::CertificateInsufficient, "certificate does not re-verify: " + rc.reason);

    FamilyCertificate fc;
    fc.family = spec.name;
    fc.t0 = t0;
    fc.p = p;
    fc.m = b.m;
    fc.modulus = ppow(p, b.m);
    fc.anchor = "first-party certificate";
    fc.prepower = b.prepower;
    for (std::size_t i = 0; i < spec.units.size(); ++i)
        fc.reduced_units.push_back(spec.units[i].pow_mod(b.prepower[i], spec.f, fc.modulus));
    // Stability: the family reduction specialises to the direct computation
    // at t0 and at the next members of the class.
    for (long j = 0; j <= 3; ++j) {
        mpz_class t = t0 + j * fc.modulus;
        IntPoly f = spec.f.at(t);
        for (std::size_t i = 0; i < spec.units.size(); ++i) {
            IntPoly direct = poly_pow_mod(spec.units[i].at(t), b.prepower[i], f, fc.modulus);
            if (!(direct == fc.reduced_units[i].at(t).mod(fc.modulus)) ||
                !(fc.reduced_units[i].at(t).mod(fc.modulus) == fc.reduced_units[i].at(t0).mod(fc.modulus)))
                throw Error(Errc::ValidationFailed, "reduced unit polynomials are not congruence stable");
        }
    }
    fc.obligations = standard_obligations();
    fc.obligations.push_back("v_p(disc f_t) <= 1 (automatic: disc(f_t) = disc(f_t0) mod p^m)");
    return fc;
}

FamilyCertificate bs_transfer_external(const families::FamilySpec& spec, const mpz_class& t0, unsigned long p,
                                       unsigned m, const std::string& provenance) {
    if (!spec.in_domain(t0)) throw Error(Errc::OutOfDomain, "t0 = " + t0.get_str() + " outside " + spec.name);
    if (m < 2) throw Error(Errc::InvalidArgument, "anchor level m must be at least 2");
    if (provenance.empty()) throw Error(Errc::MissingAnchor, "external anchor needs a provenance");
    check_disc(spec, t0, p);
    FamilyCertificate fc;
    fc.family = spec.name;
    fc.t0 = t0;
    fc.p = p;
    fc.m = m;
    fc.modulus = ppow(p, m);
    fc.anchor = provenance;
    fc.obligations = standard_obligations();
    return fc;
}

void verify_members(const families::FamilySpec& spec, FamilyCertificate& fc, std::size_t count,
                    const VerifyOptions& opt) {
    fc.members.clear();
    for (long j = 1; fc.members.size() < count && j < 1000; ++j) {
        mpz_class t = fc.t0 + j * fc.modulus;
        if (!spec.in_domain(t)) continue;
        MemberCheck mc;
        mc.t = t;
        try {
            auto order = std::make_shared<const nt::MonogenicOrder>(spec.f.at(t));
            std::vector<OrderElem> units;
            for (const auto& s : spec.units) units.push_back(OrderElem::from_poly(order, s.at(t)));
            if (static_cast<int>(units.size()) != nt::unit_rank(*order))
                throw Error(Errc::RankMismatch, "unit count differs from the unit rank");
            BuildOptions bo;
            VerifyOptions vo = opt;
            if (!fc.prepower.empty()) {
                bo.prepower = fc.prepower;
                vo.max_m = fc.m;
            }
            UnitSystem sys = build_unit_system(order, units, fc.p, bo);
            VerifyOutcome out = bs_verify(sys, vo);
            if (auto* c = std::get_if<LeopoldtCertificate>(&out)) {
                mc.ok = recheck(*c).ok;
                mc.m = c->body.m;
                mc.detail = mc.ok ? "certified" : "certificate failed recheck";
            } else {
                mc.detail = "inconclusive";
            }
        } catch (const Error& e) {
            mc.detail = std::string(errc_name(e.code())) + ": " + e.what();
        }
        fc.members.push_back(std::move(mc));
    }
}

std::string to_json(const FamilyCertificate& fc) {
    json j;
    j["family"] = fc.family;
    j["t0"] = fc.t0.get_str();
    j["modulus"] = fc.modulus.get_str();
    j["p"] = fc.p;
    j["m"] = fc.m;
    j["anchor"] = fc.anchor;
    j["prepower"] = json::array();
    for (const auto& k : fc.prepower) j["prepower"].push_back(k.get_str());
    j["reduced_units"] = json::array();
    for (const auto& r : fc.reduced_units) j["reduced_units"].push_back(r.str());
    j["obligations"] = fc.obligations;
    j["members"] = json::array();
    for (const auto& m : fc.members)
        j["members"].push_back({{"t", m.t.get_str()}, {"ok", m.ok}, {"m", m.m}, {"detail", m.detail}});
    return j.dump(2);
}

// ---- odd valuations ----

namespace {

const std::vector<unsigned long>& primes_up_to(unsigned long n) {
    static std::vector<unsigned long> cache;
    static unsigned long cached = 0;
    if (cached < n) {
        std::vector<bool> comp(n + 1, false);
        cache.clear();
        for (unsigned long i = 2; i <= n; ++i) {
            if (comp[i]) continue;
            cache.push_back(i);
            for (unsigned long j = i * i; j <= n; j += i) comp[j] = true;
        }
        cached = n;
    }
    return cache;
}

// Odd-valuation primes of a nonzero value, or nullopt when the value could not
// be fully factored within the limits.
std::optional<std::vector<std::pair<mpz_class, unsigned long>>> odd_part(const mpz_class& value,
                                                                         const OddValuationOptions& opt,
                                                                         const std::vector<unsigned long>& primes) {
    mpz_class n = abs(value);
    std::vector<std::pair<mpz_class, unsigned long>> out;
    for (unsigned long p : primes) {
        if (n == 1) break;
        if (mpz_class(p) * p > n) break;
        if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        if (e % 2) out.emplace_back(p, e);
    }
    if (n > 1) {
        bool fully_trialled = mpz_class(primes.empty() ? 1 : primes.back()) * (primes.empty() ? 1 : primes.back()) >= n;
        if (fully_trialled) {
            out.emplace_back(n, 1);
        } else if (n < opt.cofactor_limit && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
            out.emplace_back(n, 1);
        } else {
            return std::nullopt;
        }
    }
    return out;
}

void require_non_square(const IntPoly& g) {
    if (g.degree() < 1) throw Error(Errc::PolynomialIsSquare, "constant polynomial");
    auto parts = nt::yun_decomposition(g);
    for (std::size_t i = 0; i < parts.size(); i += 2)
        if (parts[i].degree() > 0) return;
    throw Error(Errc::PolynomialIsSquare, g.str('y') + " is a square up to a constant");
}

template <class F>
void scan_progression(const IntPoly& g, const mpz_class& a, const mpz_class& b, const mpz_class& range_bound,
                      const OddValuationOptions& opt, F&& visit) {
    const auto& primes = primes_up_to(opt.trial_bound);
    for (mpz_class k = b; abs(k) <= range_bound; k += a) {
        mpz_class v = g.eval(k);
        if (v == 0) continue;
        auto part = odd_part(v, opt, primes);
        if (!part) continue;
        for (auto& [p, e] : *part)
            if (visit(k, p, e)) return;
        if (a == 0) break;
    }
}

}  // namespace

std::vector<OddValuation> odd_valuation_primes(const IntPoly& g, const mpz_class& a, const mpz_class& b,
                                               const mpz_class& range_bound, std::size_t want,
                                               const OddValuationOptions& opt) {
    require_non_square(g);
    std::vector<OddValuation> out;
    std::set<mpz_class> seen;
    scan_progression(g, a, b, range_bound, opt, [&](const mpz_class& k, const mpz_class& p, unsigned long e) {
        if (seen.insert(p).second) out.push_back({p, k, e});
        return out.size() >= want;
    });
    if (out.size() < want) {
        std::string found;
        for (const auto& o : out) found += " " + o.prime.get_str() + "@" + o.k.get_str();
        throw Error(Errc::NotEnoughFound, "found " + std::to_string(out.size()) + " of " + std::to_string(want) +
                                              " primes:" + found);
    }
    return out;
}

InfinitudeReport infinitude_certificate(const families::FamilySpec& spec, const mpz_class& t0,
                                        const mpz_class& modulus, std::size_t want, const mpz_class& range_bound) {
    if (modulus <= 0) throw Error(Errc::InvalidArgument, "modulus must be positive");
    require_non_square(spec.disc_poly);
    mpz_class start;
    mpz_fdiv_r(start.get_mpz_t(), t0.get_mpz_t(), modulus.get_mpz_t());
    while (!spec.in_domain(start)) start += modulus;
    InfinitudeReport rep;
    rep.family = spec.name;
    rep.t0 = t0;
    rep.modulus = modulus;
    std::set<mpz_class> used_t;
    scan_progression(spec.disc_poly, modulus, start, range_bound, {},
                     [&](const mpz_class& k, const mpz_class& p, unsigned long e) {
                         if (used_t.count(k)) return false;
                         mpz_class dk = spec.disc_poly.eval(k);
                         for (const auto& m : rep.members) {
                             mpz_class dm = spec.disc_poly.eval(m.t);
                             if (mpz_divisible_p(dm.get_mpz_t(), p.get_mpz_t())) return false;
                             if (mpz_divisible_p(dk.get_mpz_t(), m.prime.get_mpz_t())) return false;
                         }
                         if (!nt::irreducible_over_q(spec.f.at(k))) return false;
                         rep.members.push_back({k, p, e});
                         used_t.insert(k);
                         return rep.members.size() >= want;
                     });
    if (rep.members.size() < want)
        throw Error(Errc::NotEnoughFound, "only " + std::to_string(rep.members.size()) + " distinguished members found");
    return rep;
}

std::string to_json(const InfinitudeReport& r) {
    json j;
    j["family"] = r.family;
    j["t0"] = r.t0.get_str();
    j["modulus"] = r.modulus.get_str();
    j["members"] = json::array();
    for (const auto& m : r.members)
        j["members"].push_back({{"t", m.t.get_str()}, {"prime", m.prime.get_str()}, {"valuation", m.valuation}});
    return j.dump(2);
}

}  // namespace leo::bs
