#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leo/char_brauer.hpp"
#include "leo/subgroup_lattice.hpp"

namespace leo::defects {

using groups::ElementId;
using groups::SubgroupLattice;

enum class Base { Rationals, ImaginaryQuadratic, Other };
const char* base_name(Base b);
Base parse_base(const std::string& s);

// L/K Galois with group G; c is the chosen complex conjugation.
struct FieldContext {
    std::shared_ptr<const SubgroupLattice> lattice;
    Base base = Base::Rationals;
    ElementId conjugation = 0;
    std::uint64_t prime = 0;  // symbolic; defects are per prime
    // Other: K taken totally real of this degree, c acting alike at every real place.
    std::size_t base_degree = 1;

    const SubgroupLattice& lat() const { return *lattice; }
};

FieldContext make_context(std::shared_ptr<const SubgroupLattice> lat, Base base, ElementId conjugation,
                          std::uint64_t prime = 0, std::size_t base_degree = 1);

struct Signature {
    std::size_t r1 = 0, r2 = 0;
};
Signature fixed_field_signature(const FieldContext& ctx, std::size_t h);
std::size_t fixed_field_unit_rank(const FieldContext& ctx, std::size_t h);

struct DefectRelation {
    std::vector<std::pair<std::size_t, mpq_class>> terms;  // (subgroup class, coefficient), sum = 0
    std::string provenance;
};

std::vector<DefectRelation> defect_relations(const FieldContext& ctx);
// "d(C1) + 2d(S3) = 2d(C2) + d(C3)" with class labels.
std::string format_relation(const SubgroupLattice& lat, const DefectRelation& rel);

struct DegreeSupport {
    std::vector<std::size_t> degrees;  // distinct non-linear degrees, ascending
    bool admits(std::size_t n) const;
};
DegreeSupport degree_support(const FieldContext& ctx);
// Support for L^H with H normal: non-linear degrees of characters with H in the kernel.
DegreeSupport degree_support_for(const chars::CharacterTable& t, const std::vector<bool>& normal_classes);

struct Fact {
    enum class Op { Eq, Le };
    std::size_t cls;
    Op op;
    long value;
};

struct DefectAssignment {
    std::vector<long> values;  // per subgroup class
    bool operator==(const DefectAssignment& o) const { return values == o.values; }
};

struct SolveResult {
    std::vector<DefectAssignment> assignments;
    std::vector<long> upper_bounds;  // per class, from the unit rank
    bool truncated = false;
    std::vector<std::string> notes;
    bool feasible() const { return !assignments.empty(); }
};

SolveResult solve_defects(const FieldContext& ctx, const std::vector<Fact>& facts,
                          std::size_t max_solutions = 100000);

enum class PlanTag { CharacterKernel, CyclicQuotient, Frobenius, RelationSubgroups, Generalised };
const char* plan_tag_name(PlanTag t);

struct ReductionPlan {
    PlanTag tag = PlanTag::CharacterKernel;
    std::vector<std::size_t> classes;  // Leo(L^H,p) for these suffices
    bool all_proper_subfields = false;  // set when no lattice is available
    std::vector<std::pair<std::size_t, std::string>> dropped;  // classes with automatic Leo and why
    std::string justification;
};

ReductionPlan reduction_plan(const FieldContext& ctx);
// Group-only variant for lattices beyond the cap: only the generalised route applies.
std::optional<ReductionPlan> reduction_plan_without_lattice(const groups::PermGroup& g);

}  // namespace leo::defects
