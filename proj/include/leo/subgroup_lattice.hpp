#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leo/perm_group.hpp"

namespace leo::groups {

using Bits = std::vector<std::uint64_t>;

struct Subgroup {
    std::vector<ElementId> elements;  // sorted
    Bits bits;
    std::vector<ElementId> gens;

    std::size_t order() const { return elements.size(); }
    bool contains(ElementId g) const { return (bits[g >> 6] >> (g & 63)) & 1u; }
};

class SubgroupLattice {
public:
    static constexpr std::size_t kDefaultCap = 2000;

    explicit SubgroupLattice(std::shared_ptr<const PermGroup> g, std::size_t cap = kDefaultCap);

    const PermGroup& group() const { return *group_; }
    std::shared_ptr<const PermGroup> group_ptr() const { return group_; }

    std::size_t size() const { return subs_.size(); }
    const Subgroup& subgroup(std::size_t i) const { return subs_[i]; }
    std::size_t trivial() const { return 0; }
    std::size_t whole() const { return subs_.size() - 1; }

    bool leq(std::size_t a, std::size_t b) const { return leq_[a * subs_.size() + b]; }
    long long mobius(std::size_t a, std::size_t b) const;
    // Moebius function of the sub-poset given by a membership mask.
    long long mobius_in(const std::vector<bool>& member, std::size_t a, std::size_t b) const;

    std::size_t num_classes() const { return class_members_.size(); }
    const std::vector<std::size_t>& class_members(std::size_t c) const { return class_members_[c]; }
    std::size_t class_of(std::size_t i) const { return class_of_[i]; }
    std::size_t class_rep(std::size_t c) const { return class_members_[c][0]; }
    const std::string& class_label(std::size_t c) const { return labels_[c]; }
    // Accepts a class label ("C2a", "D8") or a class index ("3").
    std::optional<std::size_t> class_by_label(const std::string& s) const;

    bool is_normal(std::size_t i) const { return class_members_[class_of_[i]].size() == 1; }
    bool is_cyclic(std::size_t i) const { return cyclic_[i]; }
    bool is_abelian(std::size_t i) const;

    std::optional<std::size_t> find(const Bits& b) const;
    std::optional<std::size_t> find_elements(std::vector<ElementId> elems) const;
    std::size_t generated_by(const std::vector<ElementId>& gens) const;
    std::size_t intersection(std::size_t a, std::size_t b) const;
    std::size_t join(std::size_t a, std::size_t b) const;
    // Index of HK when HK is a subgroup.
    std::optional<std::size_t> product(std::size_t a, std::size_t b) const;
    std::size_t conjugate(std::size_t i, ElementId g) const;

    // Quotient-structure helpers for normal subgroups.
    bool quotient_abelian(std::size_t normal) const;
    bool quotient_cyclic(std::size_t normal) const;
    std::size_t derived_subgroup() const { return derived_; }

private:
    std::shared_ptr<const PermGroup> group_;
    std::vector<Subgroup> subs_;
    std::vector<bool> leq_;
    std::vector<long long> mobius_;
    std::vector<std::vector<std::size_t>> class_members_;
    std::vector<std::size_t> class_of_;
    std::vector<std::string> labels_;
    std::vector<bool> cyclic_;
    std::size_t derived_ = 0;

    Bits make_bits(const std::vector<ElementId>& elems) const;
    Subgroup closure(const std::vector<ElementId>& seed, const std::vector<ElementId>& gens) const;
    static std::string bits_key(const Bits& b);
};

std::string structure_name_of(const PermGroup& g, const std::vector<ElementId>& elems);

struct FrobeniusStructure {
    std::size_t kernel;
    std::size_t complement;
};

std::optional<FrobeniusStructure> frobenius_structure(const SubgroupLattice& lat);

bool admits_useful_relation(const SubgroupLattice& lat);
// Same predicate by element search; usable above the lattice cap.
bool admits_useful_relation(const PermGroup& g);
bool admits_generalised_relation(const SubgroupLattice& lat);
bool admits_generalised_relation(const PermGroup& g);
// Invariant test for SL2(F_l), l a Fermat prime 2^(2^k)+1 with k > 1.
bool looks_like_fermat_sl2(const PermGroup& g, const std::vector<ElementId>& elems);

}  // namespace leo::groups
