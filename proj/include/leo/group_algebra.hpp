#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leo/perm_group.hpp"
#include "leo/qmatrix.hpp"
#include "leo/subgroup_lattice.hpp"

namespace leo::algebra {

using groups::ElementId;
using groups::PermGroup;
using groups::SubgroupLattice;

// Element of Q[G], stored sparsely: no zero coefficients are kept.
class AlgebraElement {
public:
    AlgebraElement() = default;
    static AlgebraElement one() { return term(PermGroup::identity(), 1); }
    static AlgebraElement term(ElementId g, const mpq_class& c);

    const std::map<ElementId, mpq_class>& terms() const { return c_; }
    mpq_class coeff(ElementId g) const;
    bool is_zero() const { return c_.empty(); }
    bool is_scalar() const;

    void add(ElementId g, const mpq_class& c);
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement scaled(const mpq_class& s) const;
    bool operator==(const AlgebraElement& o) const { return c_ == o.c_; }

private:
    std::map<ElementId, mpq_class> c_;
};

AlgebraElement multiply(const PermGroup& g, const AlgebraElement& a, const AlgebraElement& b);
// x a x^-1
AlgebraElement conjugate(const PermGroup& g, ElementId x, const AlgebraElement& a);

// Norm element N_H and idempotent e_H = N_H / |H|.
AlgebraElement norm_element(const SubgroupLattice& lat, std::size_t h);
AlgebraElement idempotent(const SubgroupLattice& lat, std::size_t h);

enum class RelationKind { Plain, Useful, GeneralisedUseful };
const char* kind_name(RelationKind k);

struct IdempotentRelation {
    // Plain and useful: 0 = sum a_H e_H. Generalised: 1 = sum a_H e_H.
    std::vector<std::pair<std::size_t, mpq_class>> terms;
    // Generalised relations with genuine Q[G] coefficients.
    std::optional<std::vector<std::pair<std::size_t, AlgebraElement>>> generalised_terms;
    RelationKind kind = RelationKind::Plain;

    bool generalised() const { return kind == RelationKind::GeneralisedUseful; }
    mpq_class coeff(std::size_t h) const;
};

// Merges duplicate indices, drops zeros, sorts by subgroup index and sets
// the plain/useful kind from the trivial-subgroup coefficient.
IdempotentRelation make_relation(std::vector<std::pair<std::size_t, mpq_class>> terms);
IdempotentRelation make_generalised(std::vector<std::pair<std::size_t, mpq_class>> terms);

AlgebraElement expand(const SubgroupLattice& lat, const IdempotentRelation& rel);
bool verify_relation(const SubgroupLattice& lat, const IdempotentRelation& rel);

// Sums the coefficients of each conjugacy class of subgroups.
std::vector<mpq_class> class_coefficients(const SubgroupLattice& lat, const IdempotentRelation& rel);
// Returns r with a = r*b (both plain), if one exists.
std::optional<mpq_class> proportional(const IdempotentRelation& a, const IdempotentRelation& b);

IdempotentRelation cover_relation(const SubgroupLattice& lat, const std::vector<std::size_t>& cover);
// Subgroups meeting pairwise trivially and covering G.
IdempotentRelation partition_relation(const SubgroupLattice& lat, const std::vector<std::size_t>& parts);
// kernels: the kernels of the complex irreducible characters of G.
IdempotentRelation kani_relation(const SubgroupLattice& lat, const std::vector<std::size_t>& subgroups,
                                 const std::vector<std::size_t>& kernels);
IdempotentRelation frobenius_relation(const SubgroupLattice& lat, const groups::FrobeniusStructure& fs);

// Matrix representation of G over Q, fixed by the images of the generators.
class RationalRep {
public:
    RationalRep(std::shared_ptr<const PermGroup> g, std::vector<QMatrix> generator_matrices);
    static RationalRep regular(std::shared_ptr<const PermGroup> g);
    static RationalRep permutation(std::shared_ptr<const PermGroup> g);
    // Permutation module Q[G/H].
    static RationalRep coset(const SubgroupLattice& lat, std::size_t h);
    static RationalRep zero(std::shared_ptr<const PermGroup> g);

    const PermGroup& group() const { return *group_; }
    std::size_t dimension() const { return dim_; }
    const std::vector<QMatrix>& generator_matrices() const { return gens_; }
    const QMatrix& matrix(ElementId g) const { return mats_[g]; }
    // "exhaustive" or "sampled"
    const std::string& validation_mode() const { return mode_; }

private:
    std::shared_ptr<const PermGroup> group_;
    std::size_t dim_ = 0;
    std::vector<QMatrix> gens_;
    std::vector<QMatrix> mats_;
    std::string mode_;
};

QMatrix rep_apply(const RationalRep& rep, const AlgebraElement& a);

struct VanishingReport {
    std::size_t dimension = 0;
    std::vector<std::pair<std::size_t, std::size_t>> ranks;  // (kernel subgroup, rank of e_N)
    bool module_zero = false;
    bool all_ranks_zero = false;
    bool equivalence_holds() const { return module_zero == all_ranks_zero; }
};

VanishingReport vanishing_equivalences(const RationalRep& rep, const SubgroupLattice& lat,
                                       const std::vector<std::size_t>& kernels);

}  // namespace leo::algebra
