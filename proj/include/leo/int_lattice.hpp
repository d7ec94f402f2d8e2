#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace leo::nt {

using IntVec = std::vector<mpz_class>;

// Sublattice of Z^dim stored as a row Hermite normal form: positive pivots,
// entries above each pivot reduced into [0, pivot).
class IntLattice {
public:
    IntLattice() = default;
    static IntLattice from_generators(const std::vector<IntVec>& gens, std::size_t dim);
    static IntLattice full(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<IntVec>& basis() const { return rows_; }

    bool contains(const IntVec& v) const;
    bool subset_of(const IntLattice& other) const;
    bool operator==(const IntLattice& o) const { return dim_ == o.dim_ && rows_ == o.rows_; }
    IntLattice scaled(const mpz_class& k) const;
    IntLattice operator+(const IntLattice& o) const;
    // Product of pivots; the index in Z^dim when full rank.
    mpz_class determinant() const;
    // [this : sub] for a full-rank sublattice.
    mpz_class index_of(const IntLattice& sub) const;

private:
    std::size_t dim_ = 0;
    std::vector<IntVec> rows_;
};

// Rank and left kernel of an integer matrix over F_p.
std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p);
// Basis of {c : c * m = 0 mod p}.
std::vector<std::vector<std::uint64_t>> left_kernel_mod_p(const std::vector<std::vector<std::uint64_t>>& m,
                                                          std::uint64_t p);

}  // namespace leo::nt
