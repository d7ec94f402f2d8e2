#pragma once

#include <optional>
#include <vector>

#include "leo/poly.hpp"

namespace leo::nt {

// Factor degrees allowed by distinct-degree factorisation modulo several primes.
// A degree d in the result can occur as the degree of a rational factor.
std::vector<bool> possible_factor_degrees(const IntPoly& f, int primes = 25);

// A proper factor over Z of a primitive polynomial, if any.
std::optional<IntPoly> find_factor(const IntPoly& f);

bool irreducible_over_q(const IntPoly& f);

}  // namespace leo::nt
