#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace leo::groups {

using ElementId = std::uint32_t;

// Permutation of {0,...,n-1} stored as its image array.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<std::uint16_t> images);

    static Perm identity(std::size_t n);
    static Perm from_cycles(std::size_t n, const std::vector<std::vector<int>>& cycles);
    // Parses "(0 1)(2 3)" or "()" on n points.
    static Perm parse_cycles(std::size_t n, std::string_view text);

    std::size_t degree() const { return img_.size(); }
    std::uint16_t operator()(std::size_t x) const { return img_[x]; }
    const std::vector<std::uint16_t>& images() const { return img_; }

    // (a*b)(x) = a(b(x))
    Perm operator*(const Perm& o) const;
    Perm inverse() const;
    bool is_identity() const;
    std::string cycle_string() const;

    auto operator<=>(const Perm&) const = default;
    bool operator==(const Perm&) const = default;

private:
    std::vector<std::uint16_t> img_;
};

class PermGroup {
public:
    static constexpr std::size_t kDefaultClosureCap = 10000;

    PermGroup(std::size_t degree, std::vector<Perm> gens,
              std::size_t cap = kDefaultClosureCap);

    std::size_t degree() const { return degree_; }
    std::size_t order() const { return elems_.size(); }
    const std::vector<Perm>& generators() const { return gens_; }
    const std::vector<ElementId>& generator_ids() const { return gen_ids_; }
    const std::vector<Perm>& elements() const { return elems_; }
    const Perm& element(ElementId g) const { return elems_[g]; }

    std::optional<ElementId> find(const Perm& p) const;
    ElementId index_of(const Perm& p) const;

    static constexpr ElementId identity() { return 0; }
    ElementId mul(ElementId a, ElementId b) const;
    ElementId inv(ElementId a) const { return inv_[a]; }
    // g x g^-1
    ElementId conj(ElementId g, ElementId x) const { return mul(mul(g, x), inv_[g]); }
    ElementId pow(ElementId a, long long e) const;
    std::size_t element_order(ElementId a) const { return elt_order_[a]; }

    // Sorted by (element order, class size, least element).
    const std::vector<std::vector<ElementId>>& conjugacy_classes() const { return classes_; }
    std::size_t class_of(ElementId g) const { return class_of_[g]; }
    std::size_t inverse_class(std::size_t c) const { return class_of_[inv_[classes_[c][0]]]; }

    bool is_abelian() const { return abelian_; }
    bool is_cyclic() const;
    std::size_t exponent() const { return exponent_; }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

private:
    std::size_t degree_;
    std::vector<Perm> gens_;
    std::vector<ElementId> gen_ids_;
    std::vector<Perm> elems_;
    std::unordered_map<std::string, ElementId> index_;
    std::vector<ElementId> inv_;
    std::vector<std::uint16_t> table_;  // order <= kTableLimit
    std::vector<std::size_t> elt_order_;
    std::vector<std::vector<ElementId>> classes_;
    std::vector<std::size_t> class_of_;
    bool abelian_ = true;
    std::size_t exponent_ = 1;
    std::string name_;

    static constexpr std::size_t kTableLimit = 2048;
    static std::string key(const Perm& p);
};

PermGroup group_from_generators(std::size_t degree, const std::vector<Perm>& gens,
                                std::size_t cap = PermGroup::kDefaultClosureCap);

// Named groups: Sn, An, Cn, D2n (by order), Q8, V4, Aff(q), SL2(l).
PermGroup preset_group(const std::string& family, long long parameter);

// Parses a reference such as "S4", "D8", "Aff(5)", "SL2(5)", "C2xC4".
PermGroup parse_group_ref(const std::string& ref);

// Direct product acting on the disjoint union of the point sets.
PermGroup direct_product(const PermGroup& a, const PermGroup& b);

// Structural label for small groups, e.g. "C4", "V4", "S3", "D8", "A4".
std::string structure_name(const PermGroup& g);

}  // namespace leo::groups
