#pragma once

#include <string>
#include <vector>

#include "leo/poly.hpp"

namespace leo::nt {

// Polynomial in z whose coefficients are integer polynomials in y.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<IntPoly> z_coeffs);
    static BiPoly y();
    static BiPoly z();
    static BiPoly constant(const mpz_class& c);
    static BiPoly from_y(const IntPoly& p);

    int degree_z() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<IntPoly>& z_coeffs() const { return c_; }
    IntPoly z_coeff(std::size_t j) const { return j < c_.size() ? c_[j] : IntPoly(); }
    bool monic_in_z() const;

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    bool operator==(const BiPoly& o) const { return c_ == o.c_; }

    // Remainder modulo f, monic in z.
    BiPoly rem_z(const BiPoly& f) const;
    // y-coefficients reduced into [0, m).
    BiPoly mod(const mpz_class& m) const;
    // this^k mod (f, m).
    BiPoly pow_mod(const mpz_class& k, const BiPoly& f, const mpz_class& m) const;
    // Substitute y = t.
    IntPoly at(const mpz_class& t) const;

    std::string str() const;

private:
    std::vector<IntPoly> c_;
    void trim();
};

}  // namespace leo::nt
