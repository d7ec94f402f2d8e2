#pragma once

#include <vector>

#include "leo/poly.hpp"

namespace leo::nt {

// Isolating interval: exactly one root in (lo, hi), with f(lo) and f(hi) of opposite
// signs; or the exact root lo == hi.
struct RootInterval {
    mpq_class lo, hi;
    bool exact() const { return lo == hi; }
};

struct Signature {
    int r1 = 0, r2 = 0;
};

std::vector<IntPoly> sturm_chain(const IntPoly& f);
// Number of distinct real roots in (a, b].
int sturm_count(const std::vector<IntPoly>& chain, const mpq_class& a, const mpq_class& b);

// Real roots of a squarefree polynomial, ascending.
std::vector<RootInterval> real_roots(const IntPoly& f);
// Bisect until hi - lo <= 2^-bits.
RootInterval refine(const IntPoly& f, RootInterval iv, unsigned bits);

Signature signature(const IntPoly& f);

}  // namespace leo::nt
