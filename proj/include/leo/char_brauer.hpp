#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "leo/group_algebra.hpp"
#include "leo/qmatrix.hpp"
#include "leo/subgroup_lattice.hpp"

namespace leo::chars {

using groups::ElementId;
using groups::PermGroup;
using groups::SubgroupLattice;

// Rational class function, indexed by the conjugacy classes of G.
struct ClassFunction {
    std::vector<mpq_class> values;
    bool operator==(const ClassFunction& o) const { return values == o.values; }
    bool is_zero() const;
};

ClassFunction trivial_character(const PermGroup& g);
ClassFunction perm_character(const SubgroupLattice& lat, std::size_t h);
mpq_class inner_product(const PermGroup& g, const ClassFunction& a, const ClassFunction& b);
// <1_H, Res f>_H
mpq_class restricted_mean(const SubgroupLattice& lat, std::size_t h, const ClassFunction& f);

// sum a_H Ind_H^G 1 = 0 over subgroup-class indices.
struct BrauerRelation {
    std::vector<std::pair<std::size_t, mpq_class>> terms;
    bool useful() const { return !terms.empty() && terms.front().first == 0; }
    mpq_class coeff(std::size_t cls) const;
};

// Merges, drops zeros, sorts by class index.
BrauerRelation make_brauer(std::vector<std::pair<std::size_t, mpq_class>> terms);
ClassFunction evaluate(const SubgroupLattice& lat, const BrauerRelation& rel);
bool verify_brauer(const SubgroupLattice& lat, const BrauerRelation& rel);
// Scales to coprime integers with a positive leading coefficient.
BrauerRelation normalized(const BrauerRelation& rel);

// Moebius relation over a family containing every cyclic subgroup and G.
BrauerRelation gilman_relation(const SubgroupLattice& lat, const std::vector<std::size_t>& family);
// sum_{I <= H} mu(I,H)|I| Ind_I^G 1 for a non-cyclic subgroup H.
BrauerRelation gilman_relation_for(const SubgroupLattice& lat, std::size_t h);

struct ArtinTerm {
    std::size_t cls;  // class of cyclic subgroups
    mpq_class a;
};
std::vector<ArtinTerm> artin_coefficients(const SubgroupLattice& lat);
// sum over all cyclic H of a_H |H|/|G| Ind_H 1; equals 1_G for valid input.
ClassFunction artin_sum(const SubgroupLattice& lat, const std::vector<ArtinTerm>& terms);

algebra::IdempotentRelation brauer_to_idempotent(const SubgroupLattice& lat, const BrauerRelation& rel);
BrauerRelation idempotent_to_brauer(const SubgroupLattice& lat, const algebra::IdempotentRelation& rel);

std::size_t relation_space_dimension(const SubgroupLattice& lat);
// Basis in reduced echelon form, columns ordered by subgroup order then class.
std::vector<BrauerRelation> relation_space_basis(const SubgroupLattice& lat);

struct CharacterTable {
    static constexpr std::size_t kMaxOrder = 500;

    std::vector<std::size_t> degrees;                 // sorted with kernels
    std::vector<std::vector<bool>> kernel_classes;    // per character, over conjugacy classes
    std::vector<std::vector<ElementId>> kernels;      // element lists
    std::vector<std::uint64_t> verified_primes;
    // values_mod_q[p][chi][class]
    std::vector<std::vector<std::vector<std::uint64_t>>> values_mod_q;
};

CharacterTable character_table(const PermGroup& g);
// Lattice indices of the character kernels, deduplicated.
std::vector<std::size_t> kernel_subgroups(const SubgroupLattice& lat, const CharacterTable& t);
// Kani relation with the kernel condition certified from the character table.
algebra::IdempotentRelation kani_relation(const SubgroupLattice& lat, const std::vector<std::size_t>& subgroups);

struct DimFormulaReport {
    std::vector<std::pair<std::size_t, std::size_t>> dims;  // (class, dim M^H)
    mpq_class weighted_sum;
    bool ok() const { return sgn(weighted_sum) == 0; }
};
DimFormulaReport dim_formula_check(const algebra::RationalRep& rep, const SubgroupLattice& lat,
                                   const BrauerRelation& rel);

std::string format_brauer(const SubgroupLattice& lat, const BrauerRelation& rel);

}  // namespace leo::chars
