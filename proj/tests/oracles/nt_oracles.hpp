#pragma once

// Number-theory oracles built on different formulas from the library:
// discriminants from the trace form, determinants by cofactor expansion.

#include <gmpxx.h>

#include <vector>

namespace oracle {

// Newton power sums of the roots of a monic polynomial (ascending coefficients).
inline std::vector<mpz_class> power_sums(const std::vector<mpz_class>& c, std::size_t upto) {
    std::size_t n = c.size() - 1;
    std::vector<mpz_class> s(upto + 1);
    s[0] = static_cast<long>(n);
    for (std::size_t k = 1; k <= upto; ++k) {
        mpz_class acc = 0;
        for (std::size_t i = 1; i <= n && i <= k; ++i)
            acc += (i == k) ? mpz_class(c[n - i] * static_cast<long>(k)) : mpz_class(c[n - i] * s[k - i]);
        s[k] = -acc;
    }
    return s;
}

inline mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    mpz_class d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<mpz_class>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<mpz_class> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(row);
        }
        mpz_class t = m[0][j] * cofactor_det(sub);
        d += (j % 2 ? -t : t);
    }
    return d;
}

// disc(f) = det(Tr(x^(i+j))) for monic f.
inline mpz_class trace_form_disc(const std::vector<mpz_class>& c) {
    std::size_t n = c.size() - 1;
    auto s = power_sums(c, 2 * n);
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = s[i + j];
    return cofactor_det(m);
}

}  // namespace oracle
