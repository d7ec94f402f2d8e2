#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace leo::nt {

// Integer polynomial, coefficients in ascending degree; no trailing zeros.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    static IntPoly constant(const mpz_class& c);
    static IntPoly x();
    static IntPoly monomial(std::size_t deg, const mpz_class& c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
    const mpz_class& lc() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    IntPoly scaled(const mpz_class& s) const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

    IntPoly derivative() const;
    mpz_class eval(const mpz_class& x) const;
    mpq_class eval(const mpq_class& x) const;
    int sign_at(const mpq_class& x) const;
    mpz_class content() const;
    IntPoly primitive() const;
    // Remainder and quotient by a monic divisor.
    IntPoly rem_monic(const IntPoly& m) const;
    IntPoly quo_monic(const IntPoly& m) const;
    IntPoly mod(const mpz_class& n) const;   // coefficients into [0, n)
    IntPoly smod(const mpz_class& n) const;  // symmetric residues
    // f(x + a)
    IntPoly shift(const mpz_class& a) const;
    mpz_class max_abs_coeff() const;

    std::string str(char var = 'x') const;

private:
    std::vector<mpz_class> c_;
    void trim();
};

mpz_class pow_int(const mpz_class& b, unsigned long e);

// Accepts "x^3-4*x-1", "x^3 - 4x - 1" or "[-1,-4,0,1]".
IntPoly parse_poly(const std::string& s);

mpz_class resultant(const IntPoly& f, const IntPoly& g);
mpz_class discriminant(const IntPoly& f);

// gcd over Q, returned primitive with positive leading coefficient.
IntPoly gcd_q(const IntPoly& a, const IntPoly& b);
// Exact division over Z; throws when b does not divide a.
IntPoly exact_div(const IntPoly& a, const IntPoly& b);
bool divides(const IntPoly& b, const IntPoly& a);
bool squarefree(const IntPoly& f);
// Squarefree decomposition f = c * prod g_i^i (primitive g_i), via repeated gcds.
std::vector<IntPoly> yun_decomposition(const IntPoly& f);

}  // namespace leo::nt
