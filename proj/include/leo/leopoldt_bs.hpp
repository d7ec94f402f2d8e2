#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "leo/family_spec.hpp"
#include "leo/int_lattice.hpp"
#include "leo/order.hpp"
#include "leo/units.hpp"

namespace leo::bs {

inline constexpr const char* kEngineVersion = "leo-bs 1.0";

struct UnitSystem {
    std::shared_ptr<const nt::MonogenicOrder> order;
    std::vector<nt::OrderElem> generators;
    std::vector<mpz_class> prepower;  // each generator^prepower is 1 mod q
    unsigned long p = 0;
    unsigned long q = 0;
    bool independence_waived = false;
    nt::IndependenceResult independence;
    std::size_t rank() const { return generators.size(); }
};

struct BuildOptions {
    std::optional<std::vector<mpz_class>> prepower;  // accepted verbatim after a congruence check
    bool waive_independence = false;
};

bool is_prime(unsigned long p);
unsigned long q_for(unsigned long p);
// First filtration level: 1 for odd p, 2 for p = 2.
unsigned base_level(unsigned long p);

UnitSystem build_unit_system(std::shared_ptr<const nt::MonogenicOrder> order, std::vector<nt::OrderElem> units,
                             unsigned long p, const BuildOptions& opt = {});

using FpMatrix = std::vector<std::vector<std::uint64_t>>;

struct Level {
    unsigned k = 0;
    nt::IntLattice lattice;  // exponent vectors of D(p^k)
    FpMatrix phi;            // phi_k of each basis vector; filled once the next level exists
};

struct Filtration {
    unsigned long p = 0;
    std::vector<Level> levels;
    const Level& top() const { return levels.back(); }
    const Level& at(unsigned k) const;
};

struct StepOptions {
    bool assume_p_maximal = false;
};

Filtration start_filtration(const UnitSystem& sys);
// phi of one exponent vector at level j, as a vector over F_p of length n.
std::vector<std::uint64_t> phi_image(const UnitSystem& sys, const nt::IntVec& v, unsigned j);
void filtration_step(const UnitSystem& sys, Filtration& filt, const StepOptions& opt = {});
// Throws NotPMaximal when v_p(disc f) >= 2 and no override is given.
std::string p_maximality(const nt::MonogenicOrder& o, unsigned long p, bool assume);

struct Witness {
    std::vector<nt::IntVec> l_prev, l_curr;
    FpMatrix phi;
    bool operator==(const Witness&) const = default;
};

struct CertificateBody {
    nt::IntPoly f;
    std::vector<std::vector<mpz_class>> units;
    std::vector<mpz_class> prepower;
    unsigned long p = 0, q = 0;
    unsigned m = 0;
    std::string condition;  // "I", "II", "III" or "IV"
    Witness witness;
    std::string p_maximality;
    std::string engine_version = kEngineVersion;
};

struct LeopoldtCertificate {
    CertificateBody body;
};

// Issued when fewer units than the unit rank are supplied: the units are
// Z_p-independent, which says nothing about Leopoldt for the field.
struct ZpIndependenceCertificate {
    CertificateBody body;
    int unit_rank = 0;
};

struct Inconclusive {
    unsigned max_m = 0;
    std::string note;
};

using VerifyOutcome = std::variant<LeopoldtCertificate, ZpIndependenceCertificate, Inconclusive>;

struct VerifyOptions {
    unsigned max_m = 12;
    bool assume_p_maximal = false;
    bool partial_rank_waiver = false;
};

struct ConditionReport {
    bool i = false, ii = false, iii = false, iv = false;
    bool any() const { return i || ii || iii || iv; }
    bool all() const { return i && ii && iii && iv; }
};

ConditionReport evaluate_conditions(const Filtration& filt, unsigned m, std::size_t r);

VerifyOutcome bs_verify(const UnitSystem& sys, const VerifyOptions& opt = {});
// Same, also returning the filtration that was built.
VerifyOutcome bs_verify(const UnitSystem& sys, const VerifyOptions& opt, Filtration& filt);

std::string to_json(const CertificateBody& body, const std::string& claim);
std::string to_json(const LeopoldtCertificate& c);
std::string to_json(const ZpIndependenceCertificate& c);
// Parses either certificate kind.
std::variant<LeopoldtCertificate, ZpIndependenceCertificate> certificate_from_json(const std::string& text);

struct RecheckResult {
    bool ok = false;
    std::string reason;
};

// Rebuilds the filtration from the certificate's own data and compares the witness.
RecheckResult recheck(const LeopoldtCertificate& c);
RecheckResult recheck(const ZpIndependenceCertificate& c);

// ---- transfer to a family ----

struct MemberCheck {
    mpz_class t;
    bool ok = false;
    unsigned m = 0;
    std::string detail;
};

struct FamilyCertificate {
    std::string family;
    mpz_class t0, modulus;
    unsigned long p = 0;
    unsigned m = 0;
    std::string anchor;                   // provenance of the anchor fact
    std::vector<nt::BiPoly> reduced_units;  // s_i^k mod (f, p^m); empty for external anchors
    std::vector<mpz_class> prepower;
    std::vector<std::string> obligations;
    std::vector<MemberCheck> members;
};

FamilyCertificate bs_transfer(const families::FamilySpec& spec, const mpz_class& t0, unsigned long p,
                              const LeopoldtCertificate& cert);
// Anchor taken from an external fact Leo(K_t0, p) valid at level m.
FamilyCertificate bs_transfer_external(const families::FamilySpec& spec, const mpz_class& t0, unsigned long p,
                                       unsigned m, const std::string& provenance);

// Re-verifies `count` members t0 + j * modulus (j = 1, 2, ...) from scratch.
void verify_members(const families::FamilySpec& spec, FamilyCertificate& fc, std::size_t count,
                    const VerifyOptions& opt = {});

std::string to_json(const FamilyCertificate& fc);

// ---- odd valuations and infinitude ----

struct OddValuation {
    mpz_class prime;
    mpz_class k;
    unsigned long valuation = 0;
};

struct OddValuationOptions {
    unsigned long trial_bound = 1000000;
    mpz_class cofactor_limit = mpz_class("1000000000000");
};

// Primes at odd exact valuation in g(a x + b), x = 0, 1, ... with |a x + b| <= range_bound.
std::vector<OddValuation> odd_valuation_primes(const nt::IntPoly& g, const mpz_class& a, const mpz_class& b,
                                               const mpz_class& range_bound, std::size_t want,
                                               const OddValuationOptions& opt = {});

struct InfinitudeMember {
    mpz_class t;
    mpz_class prime;
    unsigned long valuation = 0;
};

struct InfinitudeReport {
    std::string family;
    mpz_class t0, modulus;
    std::vector<InfinitudeMember> members;  // each prime ramifies in its own member only
};

InfinitudeReport infinitude_certificate(const families::FamilySpec& spec, const mpz_class& t0,
                                        const mpz_class& modulus, std::size_t want,
                                        const mpz_class& range_bound = 10000);

std::string to_json(const InfinitudeReport& r);

}  // namespace leo::bs
