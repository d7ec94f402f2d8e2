#pragma once

// Dense Q[G] arithmetic computed straight from permutations, independent of
// the library's multiplication table and sparse element type.

#include <gmpxx.h>

#include <vector>

#include "leo/perm_group.hpp"

namespace oracle {

using Dense = std::vector<mpq_class>;

inline Dense dense_mul(const leo::groups::PermGroup& g, const Dense& a, const Dense& b) {
    Dense r(g.order());
    for (std::size_t x = 0; x < a.size(); ++x) {
        if (sgn(a[x]) == 0) continue;
        for (std::size_t y = 0; y < b.size(); ++y) {
            if (sgn(b[y]) == 0) continue;
            r[g.index_of(g.element(x) * g.element(y))] += a[x] * b[y];
        }
    }
    return r;
}

// Average over an arbitrary set of elements.
inline Dense dense_average(const leo::groups::PermGroup& g, const std::vector<leo::groups::Perm>& set) {
    Dense r(g.order());
    for (const auto& p : set) r[g.index_of(p)] += mpq_class(1, set.size());
    return r;
}

// All products h1 h2 ... hs as a deduplicated element list.
inline std::vector<leo::groups::Perm> product_set(const leo::groups::PermGroup& g,
                                                  const std::vector<std::vector<leo::groups::ElementId>>& parts) {
    std::vector<leo::groups::Perm> cur{leo::groups::Perm::identity(g.degree())};
    for (const auto& part : parts) {
        std::vector<leo::groups::Perm> next;
        for (const auto& p : cur)
            for (auto h : part) next.push_back(p * g.element(h));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
    }
    return cur;
}

}  // namespace oracle
