#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leo/poly.hpp"

namespace leo::nt {

// Z[x]/(f) for a monic irreducible f.
class MonogenicOrder {
public:
    explicit MonogenicOrder(IntPoly f);
    const IntPoly& poly() const { return f_; }
    int degree() const { return f_.degree(); }
    const mpz_class& discriminant() const { return disc_; }

private:
    IntPoly f_;
    mpz_class disc_;
};

// Element in coordinates on 1, x, ..., x^(n-1).
class OrderElem {
public:
    OrderElem() = default;
    OrderElem(std::shared_ptr<const MonogenicOrder> order, std::vector<mpz_class> coords);
    // Reduces an arbitrary polynomial modulo f.
    static OrderElem from_poly(std::shared_ptr<const MonogenicOrder> order, const IntPoly& p);
    static OrderElem one(std::shared_ptr<const MonogenicOrder> order);
    static OrderElem gen(std::shared_ptr<const MonogenicOrder> order);

    const std::vector<mpz_class>& coords() const { return c_; }
    const MonogenicOrder& order() const { return *o_; }
    std::shared_ptr<const MonogenicOrder> order_ptr() const { return o_; }
    IntPoly as_poly() const { return IntPoly(c_); }

    OrderElem operator+(const OrderElem& b) const;
    OrderElem operator-(const OrderElem& b) const;
    OrderElem operator*(const OrderElem& b) const;
    bool operator==(const OrderElem& b) const { return c_ == b.c_; }
    bool is_one() const;
    // Coordinates reduced into [0, m).
    OrderElem reduced(const mpz_class& m) const;
    bool congruent_one(const mpz_class& m) const;

    mpz_class norm() const;
    // Exact inverse of a unit; throws NotAUnit otherwise.
    OrderElem inverse() const;
    OrderElem pow(const mpz_class& e) const;
    // Power with coordinates reduced mod m throughout; negative e uses the exact inverse.
    OrderElem pow_mod(const mpz_class& e, const mpz_class& m) const;

    std::string str() const;

private:
    std::shared_ptr<const MonogenicOrder> o_;
    std::vector<mpz_class> c_;
};

bool is_unit(const OrderElem& u);

}  // namespace leo::nt
