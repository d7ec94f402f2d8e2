#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leo/family_spec.hpp"
#include "leo/leopoldt_bs.hpp"
#include "leo/sturm.hpp"

namespace leo::families {

// Names: cubic_s3, nakamula_d8, bs_quintic_a, bs_quintic_b, pure_field.
// pure_field takes "pure_field:n:+" or "pure_field:n:-" (default n = 3, +).
FamilySpec preset(const std::string& name);
std::vector<std::string> preset_names();

// z^n - (y^n + sign), with units z^d - y^d for proper divisors d of n.
FamilySpec pure_field(int n, int sign);

// User family: {"f": [[...], ...], "units": [[[...]]...], "domain": "t>=2", ...}
FamilySpec family_from_json(const std::string& text);

struct MemberReport {
    mpz_class t;
    nt::Signature signature;
    mpz_class discriminant;
    bool disc_matches_symbolic = false;
    std::string closure;  // witness result, e.g. "S3"
    int unit_rank = 0;
};

struct Member {
    std::shared_ptr<const nt::MonogenicOrder> order;
    std::vector<nt::OrderElem> units;  // empty when the family has none
    MemberReport report;
};

Member family_member(const FamilySpec& spec, const mpz_class& t);

// Galois closure group of a cubic or quartic from discriminant and resolvent data.
std::string cubic_closure(const nt::IntPoly& f);
std::string quartic_closure(const nt::IntPoly& f);

struct ScanPolicy {
    bs::VerifyOptions verify;
    unsigned jobs = 1;
    bool ignore_exclusions = false;
};

struct ScanEntry {
    mpz_class t;
    unsigned long p = 0;
    std::string status;  // certified | zp-only | inconclusive | skipped
    std::string reason;
    std::optional<bs::LeopoldtCertificate> certificate;
    std::string transfer;  // closure implication when certified
};

// Sorted by (t, p) whatever the completion order.
std::vector<ScanEntry> family_scan(const FamilySpec& spec, const std::vector<mpz_class>& ts,
                                   const std::vector<unsigned long>& primes, const ScanPolicy& policy = {});

struct Anchor {
    mpz_class t0;
    unsigned long p = 0;
    unsigned m = 0;
    std::string provenance;
};

struct OrchestrationResult {
    std::vector<unsigned long> primes;
    mpz_class residue, modulus;          // t = residue mod modulus
    std::vector<bs::FamilyCertificate> anchors;  // one per prime handled by transfer
    std::vector<ScanEntry> samples;              // sample members at every prime
    bs::InfinitudeReport infinitude;
    bool all_samples_ok() const;
};

// Cubic family only. 3 in P needs an anchor at p = 3 unless the engine certifies t0 = 2 itself.
OrchestrationResult orchestrate_prime_set(const std::vector<unsigned long>& primes, std::vector<Anchor> anchors,
                                          std::size_t count = 5, const ScanPolicy& policy = {});

std::string to_json(const ScanEntry& e);
std::string to_json(const std::vector<ScanEntry>& es);
std::string to_json(const OrchestrationResult& r);

}  // namespace leo::families
