#include "leo/leopoldt_bs.hpp"

#include <json.hpp>

#include "leo/error.hpp"
#include "leo/sturm.hpp"

namespace leo::bs {

using nt::IntLattice;
using nt::IntVec;
using nt::OrderElem;
using json = nlohmann::ordered_json;

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

unsigned long q_for(unsigned long p) { return p == 2 ? 4 : p; }
unsigned base_level(unsigned long p) { return p == 2 ? 2 : 1; }

namespace {

mpz_class ppow(unsigned long p, unsigned long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, k);
    return r;
}

}  // namespace

UnitSystem build_unit_system(std::shared_ptr<const nt::MonogenicOrder> order, std::vector<OrderElem> units,
                             unsigned long p, const BuildOptions& opt) {
    if (!is_prime(p)) throw Error(Errc::InvalidArgument, std::to_string(p) + " is not prime");
    if (units.empty()) throw Error(Errc::InvalidArgument, "empty unit system");
    for (const auto& u : units)
        if (!nt::is_unit(u)) throw Error(Errc::NotAUnit, "element " + u.str() + " has norm " + u.norm().get_str());
    UnitSystem sys;
    sys.order = order;
    sys.p = p;
    sys.q = q_for(p);
    sys.independence_waived = opt.waive_independence;
    if (!opt.waive_independence) {
        sys.independence = nt::units_independent(units);
        if (sys.independence.verdict != nt::Independence::Independent)
            throw Error(Errc::ValidationFailed, std::string("units not certified independent (") +
                                                    nt::independence_name(sys.independence.verdict) + ")");
    }
    mpz_class q = sys.q;
    if (opt.prepower) {
        if (opt.prepower->size() != units.size()) throw Error(Errc::InvalidArgument, "one prepower per unit needed");
        for (std::size_t i = 0; i < units.size(); ++i) {
            const mpz_class& k = (*opt.prepower)[i];
            if (k <= 0) throw Error(Errc::InvalidArgument, "prepower exponents must be positive");
            if (!units[i].pow_mod(k, q).congruent_one(q))
                throw Error(Errc::InvalidArgument,
                            "unit " + units[i].str() + "^" + k.get_str() + " is not 1 mod " + q.get_str());
        }
        sys.prepower = *opt.prepower;
    } else {
        mpz_class bound = ppow(sys.q, order->degree());
        for (const auto& u : units) {
            OrderElem base = u.reduced(q), w = base;
            mpz_class k = 1;
            while (!w.congruent_one(q)) {
                w = (w * base).reduced(q);
                if (++k > bound) throw Error(Errc::OrderSearchExceeded, "order search bound exceeded for " + u.str());
            }
            sys.prepower.push_back(k);
        }
    }
    sys.generators = std::move(units);
    return sys;
}

const Level& Filtration::at(unsigned k) const {
    for (const auto& l : levels)
        if (l.k == k) return l;
    throw Error(Errc::InvalidArgument, "filtration has no level " + std::to_string(k));
}

std::string p_maximality(const nt::MonogenicOrder& o, unsigned long p, bool assume) {
    mpz_class d = abs(o.discriminant());
    unsigned v = 0;
    while (v < 2 && mpz_divisible_ui_p(d.get_mpz_t(), p)) {
        d /= p;
        ++v;
    }
    if (v <= 1) return "disc-valuation <= 1";
    if (assume) return "user-asserted";
    throw Error(Errc::NotPMaximal, std::to_string(p) + "^2 divides disc " + o.discriminant().get_str());
}

Filtration start_filtration(const UnitSystem& sys) {
    Filtration f;
    f.p = sys.p;
    f.levels.push_back({base_level(sys.p), IntLattice::full(sys.rank()), {}});
    return f;
}

std::vector<std::uint64_t> phi_image(const UnitSystem& sys, const IntVec& v, unsigned j) {
    mpz_class pj = ppow(sys.p, j), mod = pj * sys.p;
    OrderElem u = OrderElem::one(sys.order);
    for (std::size_t i = 0; i < sys.rank(); ++i) {
        mpz_class e = v[i] * sys.prepower[i];
        if (e != 0) u = (u * sys.generators[i].pow_mod(e, mod)).reduced(mod);
    }
    if (!u.congruent_one(pj))
        throw Error(Errc::FiltrationInvariantBroken, "element is not 1 mod " + pj.get_str() + " at level " +
                                                         std::to_string(j));
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < u.coords().size(); ++i) {
        mpz_class c = u.coords()[i] - (i == 0 ? 1 : 0);
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
        out.push_back(mpz_fdiv_ui(c.get_mpz_t(), sys.p));
    }
    return out;
}

void filtration_step(const UnitSystem& sys, Filtration& filt, const StepOptions& opt) {
    p_maximality(*sys.order, sys.p, opt.assume_p_maximal);
    Level& top = filt.levels.back();
    const auto& basis = top.lattice.basis();
    top.phi.clear();
    for (const auto& b : basis) top.phi.push_back(phi_image(sys, b, top.k));
    std::vector<IntVec> gens;
    for (const auto& c : nt::left_kernel_mod_p(top.phi, sys.p)) {
        IntVec v(sys.rank());
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t t = 0; t < v.size(); ++t) v[t] += static_cast<unsigned long>(c[i]) * basis[i][t];
        gens.push_back(std::move(v));
    }
    for (const auto& b : basis) {
        IntVec v = b;
        for (auto& x : v) x *= sys.p;
        gens.push_back(std::move(v));
    }
    Level next{top.k + 1, IntLattice::from_generators(gens, sys.rank()), {}};
    const IntLattice& prev = top.lattice;
    if (!next.lattice.subset_of(prev)) throw Error(Errc::FiltrationInvariantBroken, "level is not contained in its predecessor");
    if (!prev.scaled(sys.p).subset_of(next.lattice)) throw Error(Errc::FiltrationInvariantBroken, "p * L_k is not inside L_(k+1)");
    std::size_t rk = nt::rank_mod_p(top.phi, sys.p);
    if (prev.index_of(next.lattice) != ppow(sys.p, rk))
        throw Error(Errc::FiltrationInvariantBroken, "index differs from p^rank(phi)");
    filt.levels.push_back(std::move(next));
}

ConditionReport evaluate_conditions(const Filtration& filt, unsigned m, std::size_t r) {
    const Level& prev = filt.at(m - 1);
    const Level& curr = filt.at(m);
    ConditionReport c;
    c.iv = nt::rank_mod_p(prev.phi, filt.p) == r;
    c.iii = prev.lattice.index_of(curr.lattice) == ppow(filt.p, r);
    c.ii = curr.lattice == prev.lattice.scaled(filt.p);
    c.i = curr.lattice.subset_of(IntLattice::full(r).scaled(filt.p));
    return c;
}

namespace {

CertificateBody make_body(const UnitSystem& sys, const Filtration& filt, unsigned m, const std::string& pmax) {
    CertificateBody b;
    b.f = sys.order->poly();
    for (const auto& g : sys.generators) b.units.push_back(g.coords());
    b.prepower = sys.prepower;
    b.p = sys.p;
    b.q = sys.q;
    b.m = m;
    b.condition = "IV";
    b.witness.l_prev = filt.at(m - 1).lattice.basis();
    b.witness.l_curr = filt.at(m).lattice.basis();
    b.witness.phi = filt.at(m - 1).phi;
    b.p_maximality = pmax;
    return b;
}

}  // namespace

VerifyOutcome bs_verify(const UnitSystem& sys, const VerifyOptions& opt) {
    Filtration f;
    return bs_verify(sys, opt, f);
}

VerifyOutcome bs_verify(const UnitSystem& sys, const VerifyOptions& opt, Filtration& filt) {
    std::string pmax = p_maximality(*sys.order, sys.p, opt.assume_p_maximal);
    int rank = nt::unit_rank(*sys.order);
    int r = static_cast<int>(sys.rank());
    if (r > rank || (r < rank && !opt.partial_rank_waiver))
        throw Error(Errc::RankMismatch,
                    std::to_string(r) + " generators for unit rank " + std::to_string(rank));
    filt = start_filtration(sys);
    unsigned k0 = base_level(sys.p);
    while (filt.top().k < opt.max_m) {
        filtration_step(sys, filt, {opt.assume_p_maximal});
        unsigned m = filt.top().k;
        if (m < 2 || m - 1 < k0) continue;
        ConditionReport c = evaluate_conditions(filt, m, sys.rank());
        if (!c.any()) continue;
        if (!c.all())
            throw Error(Errc::ConditionDisagreement, "conditions disagree at m = " + std::to_string(m));
        CertificateBody body = make_body(sys, filt, m, pmax);
        if (r == rank) return LeopoldtCertificate{std::move(body)};
        return ZpIndependenceCertificate{std::move(body), rank};
    }
    return Inconclusive{opt.max_m, "no condition holds up to m = " + std::to_string(opt.max_m)};
}

// ---- JSON ----

namespace {

json zj(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

mpz_class jz(const json& j) {
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw Error(Errc::ParseError, "expected an integer");
}

json vecj(const std::vector<mpz_class>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(zj(x));
    return a;
}

std::vector<mpz_class> jvec(const json& j) {
    std::vector<mpz_class> v;
    for (const auto& x : j) v.push_back(jz(x));
    return v;
}

json matj(const std::vector<IntVec>& m) {
    json a = json::array();
    for (const auto& r : m) a.push_back(vecj(r));
    return a;
}

json fpj(const FpMatrix& m) {
    json a = json::array();
    for (const auto& r : m) a.push_back(r);
    return a;
}

}  // namespace

std::string to_json(const CertificateBody& b, const std::string& claim) {
    json j;
    j["f"] = vecj(b.f.coeffs());
    json units = json::array();
    for (const auto& u : b.units) units.push_back(vecj(u));
    j["units"] = units;
    j["prepower"] = vecj(b.prepower);
    j["p"] = b.p;
    j["q"] = b.q;
    j["m"] = b.m;
    j["condition"] = b.condition;
    j["L_prev"] = matj(b.witness.l_prev);
    j["L_curr"] = matj(b.witness.l_curr);
    j["phi"] = fpj(b.witness.phi);
    j["p_maximality"] = b.p_maximality;
    j["engine_version"] = b.engine_version;
    j["claim"] = claim;
    return j.dump(2);
}

std::string to_json(const LeopoldtCertificate& c) { return to_json(c.body, "leopoldt"); }
std::string to_json(const ZpIndependenceCertificate& c) { return to_json(c.body, "zp-independence"); }

std::variant<LeopoldtCertificate, ZpIndependenceCertificate> certificate_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
        CertificateBody b;
        b.f = nt::IntPoly(jvec(j.at("f")));
        for (const auto& u : j.at("units")) b.units.push_back(jvec(u));
        b.prepower = jvec(j.at("prepower"));
        b.p = j.at("p").get<unsigned long>();
        b.q = j.at("q").get<unsigned long>();
        b.m = j.at("m").get<unsigned>();
        b.condition = j.at("condition").get<std::string>();
        for (const auto& r : j.at("L_prev")) b.witness.l_prev.push_back(jvec(r));
        for (const auto& r : j.at("L_curr")) b.witness.l_curr.push_back(jvec(r));
        b.witness.phi = j.at("phi").get<FpMatrix>();
        b.p_maximality = j.at("p_maximality").get<std::string>();
        b.engine_version = j.at("engine_version").get<std::string>();
        std::string claim = j.value("claim", "leopoldt");
        if (claim == "leopoldt") return LeopoldtCertificate{std::move(b)};
        if (claim == "zp-independence") return ZpIndependenceCertificate{std::move(b), 0};
        throw Error(Errc::ParseError, "unknown certificate claim '" + claim + "'");
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("certificate: ") + e.what());
    }
}

namespace {

RecheckResult recheck_body(const CertificateBody& b, bool full_rank) {
    RecheckResult res;
    try {
        if (b.condition != "I" && b.condition != "II" && b.condition != "III" && b.condition != "IV")
            return {false, "unknown condition " + b.condition};
        if (b.m < 2) return {false, "m must be at least 2"};
        if (b.q != q_for(b.p)) return {false, "q does not match p"};
        auto order = std::make_shared<const nt::MonogenicOrder>(b.f);
        std::vector<OrderElem> units;
        for (const auto& u : b.units) units.emplace_back(order, u);
        UnitSystem sys = build_unit_system(order, units, b.p, {b.prepower, false});
        bool assume = b.p_maximality == "user-asserted";
        if (p_maximality(*order, b.p, assume) != b.p_maximality) return {false, "p-maximality tag mismatch"};
        int rank = nt::unit_rank(*order);
        if (full_rank != (static_cast<int>(sys.rank()) == rank)) return {false, "claim does not match the unit rank"};
        Filtration filt = start_filtration(sys);
        while (filt.top().k < b.m) filtration_step(sys, filt, {assume});
        if (b.m - 1 < base_level(b.p)) return {false, "m below the base level"};
        Witness w{filt.at(b.m - 1).lattice.basis(), filt.at(b.m).lattice.basis(), filt.at(b.m - 1).phi};
        if (!(w == b.witness)) return {false, "witness differs from the recomputed filtration"};
        ConditionReport c = evaluate_conditions(filt, b.m, sys.rank());
        if (!c.all()) return {false, "conditions do not hold at m"};
        return {true, "ok"};
    } catch (const Error& e) {
        return {false, std::string(errc_name(e.code())) + ": " + e.what()};
    }
}

}  // namespace

RecheckResult recheck(const LeopoldtCertificate& c) { return recheck_body(c.body, true); }
RecheckResult recheck(const ZpIndependenceCertificate& c) { return recheck_body(c.body, false); }

}  // namespace leo::bs
