#pragma once

#include <functional>
#include <string>
#include <vector>

#include "leo/bipoly.hpp"

namespace leo::families {

// A one-parameter family f(t, z) with unit polynomials s_i(t, z).
struct FamilySpec {
    std::string name;
    nt::BiPoly f;
    std::vector<nt::BiPoly> units;  // empty when units must be supplied by the user
    nt::IntPoly disc_poly;
    mpz_class domain_min;
    std::string closure_group;  // "S3", "D8", or empty when not tracked
    std::string transfer_rule;
    std::string exclusion_text;
    // Reason (t, p) falls outside the family criterion, empty when admissible.
    std::function<std::string(const mpz_class& t, unsigned long p)> exclusion;
    std::string remark;

    bool in_domain(const mpz_class& t) const { return t >= domain_min; }
    std::string excluded(const mpz_class& t, unsigned long p) const { return exclusion ? exclusion(t, p) : ""; }
};

}  // namespace leo::families
