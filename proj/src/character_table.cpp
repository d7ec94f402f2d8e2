// Degrees and kernels of the complex irreducible characters, computed from
// the class algebra over several prime fields F_q with q = 1 mod exp(G).

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "leo/char_brauer.hpp"
#include "leo/error.hpp"

namespace leo::chars {

namespace {

using u64 = std::uint64_t;
using Mat = std::vector<std::vector<u64>>;

u64 powmod(u64 a, u64 e, u64 q) {
    u64 r = 1;
    a %= q;
    while (e) {
        if (e & 1) r = r * a % q;
        a = a * a % q;
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 q) { return powmod(a, q - 2, q); }

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> rref_mod(Mat& m, u64 q) {
    std::vector<std::size_t> piv;
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t p = row;
        while (p < rows && m[p][col] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[row]);
        u64 inv = invmod(m[row][col], q);
        for (auto& x : m[row]) x = x * inv % q;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            u64 f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] = (m[i][j] + (q - f) * m[row][j]) % q;
        }
        piv.push_back(col);
        ++row;
    }
    m.resize(row);
    return piv;
}

// Column null space of a square matrix, returned as row vectors.
Mat nullspace_mod(Mat m, u64 q) {
    std::size_t n = m.size();
    auto piv = rref_mod(m, q);
    std::vector<bool> is_piv(n, false);
    for (auto p : piv) is_piv[p] = true;
    Mat out;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        std::vector<u64> v(n, 0);
        v[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = (q - m[k][f]) % q;
        out.push_back(std::move(v));
    }
    return out;
}

// Characteristic polynomial via reduction to Hessenberg form; coefficients
// low to high, monic.
std::vector<u64> charpoly_mod(Mat a, u64 q) {
    std::size_t n = a.size();
    for (std::size_t m = 1; m + 1 < n + 1 && m < n; ++m) {
        std::size_t i = m;
        while (i < n && a[i][m - 1] == 0) ++i;
        if (i == n) continue;
        if (i != m) {
            std::swap(a[i], a[m]);
            for (std::size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][m]);
        }
        u64 inv = invmod(a[m][m - 1], q);
        for (std::size_t r = m + 1; r < n; ++r) {
            if (a[r][m - 1] == 0) continue;
            u64 u = a[r][m - 1] * inv % q;
            for (std::size_t c = 0; c < n; ++c) a[r][c] = (a[r][c] + (q - u) * a[m][c]) % q;
            for (std::size_t c = 0; c < n; ++c) a[c][m] = (a[c][m] + u * a[c][r]) % q;
        }
    }
    // p_k: charpoly of the leading k x k block
    std::vector<std::vector<u64>> p(n + 1);
    p[0] = {1};
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<u64> next(k + 1, 0);
        // (x - a[k-1][k-1]) p_{k-1}
        for (std::size_t d = 0; d < k; ++d) {
            next[d + 1] = (next[d + 1] + p[k - 1][d]) % q;
            next[d] = (next[d] + (q - a[k - 1][k - 1]) * p[k - 1][d]) % q;
        }
        u64 t = 1;
        for (std::size_t i = 1; i < k; ++i) {
            t = t * a[k - i][k - i - 1] % q;
            u64 coef = t * a[k - i - 1][k - 1] % q;
            for (std::size_t d = 0; d < p[k - i - 1].size(); ++d)
                next[d] = (next[d] + (q - coef) * p[k - i - 1][d]) % q;
        }
        p[k] = std::move(next);
    }
    return p[n];
}

struct PrimeResult {
    std::vector<std::pair<std::size_t, std::vector<bool>>> chars;  // (degree, kernel classes)
    std::vector<std::vector<u64>> values;
};

class ClassAlgebra {
public:
    explicit ClassAlgebra(const PermGroup& g) : g_(g), cls_(g.conjugacy_classes()), mats_(cls_.size()) {}

    // A_i[j][l] = #{x in C_i : x^-1 z_l in C_j}, so A_i w = w_i w.
    const std::vector<std::vector<u64>>& matrix(std::size_t i) {
        auto& m = mats_[i];
        if (!m.empty()) return m;
        std::size_t k = cls_.size();
        m.assign(k, std::vector<u64>(k, 0));
        for (std::size_t l = 0; l < k; ++l) {
            ElementId z = cls_[l][0];
            for (ElementId x : cls_[i]) ++m[g_.class_of(g_.mul(g_.inv(x), z))][l];
        }
        return m;
    }

private:
    const PermGroup& g_;
    const std::vector<std::vector<ElementId>>& cls_;
    std::vector<Mat> mats_;
};

std::optional<PrimeResult> solve_at(const PermGroup& g, ClassAlgebra& alg, u64 q) {
    const auto& cls = g.conjugacy_classes();
    std::size_t k = cls.size();
    Mat ident(k, std::vector<u64>(k, 0));
    for (std::size_t i = 0; i < k; ++i) ident[i][i] = 1;
    std::vector<Mat> spaces{ident};  // row bases in reduced echelon form

    for (std::size_t ci = 1; ci < k; ++ci) {
        if (std::all_of(spaces.begin(), spaces.end(), [](const Mat& s) { return s.size() == 1; })) break;
        const auto& a = alg.matrix(ci);
        std::vector<Mat> next;
        for (auto& basis : spaces) {
            std::size_t d = basis.size();
            if (d == 1) {
                next.push_back(basis);
                continue;
            }
            std::vector<std::size_t> piv(d);
            for (std::size_t r = 0; r < d; ++r) {
                std::size_t c = 0;
                while (basis[r][c] == 0) ++c;
                piv[r] = c;
            }
            // restriction: A b_r = sum_s R[s][r] b_s, read off at pivots
            Mat restr(d, std::vector<u64>(d, 0));
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t s = 0; s < d; ++s) {
                    u64 acc = 0;
                    std::size_t row = piv[s];
                    for (std::size_t j = 0; j < k; ++j)
                        if (basis[r][j]) acc = (acc + a[row][j] % q * basis[r][j]) % q;
                    restr[s][r] = acc;
                }
            auto cp = charpoly_mod(restr, q);
            std::size_t found = 0;
            for (u64 lam = 0; lam < q && found < d; ++lam) {
                u64 v = 0;
                for (std::size_t t = cp.size(); t-- > 0;) v = (v * lam + cp[t]) % q;
                if (v != 0) continue;
                Mat shifted = restr;
                for (std::size_t s = 0; s < d; ++s) shifted[s][s] = (shifted[s][s] + q - lam) % q;
                Mat ns = nullspace_mod(shifted, q);
                Mat sub;
                for (const auto& c : ns) {
                    std::vector<u64> vec(k, 0);
                    for (std::size_t s = 0; s < d; ++s)
                        if (c[s])
                            for (std::size_t j = 0; j < k; ++j) vec[j] = (vec[j] + c[s] * basis[s][j]) % q;
                    sub.push_back(std::move(vec));
                }
                rref_mod(sub, q);
                found += sub.size();
                next.push_back(std::move(sub));
            }
            if (found != d) return std::nullopt;  // eigenvalues outside F_q
        }
        spaces = std::move(next);
    }
    if (spaces.size() != k) return std::nullopt;

    std::vector<std::tuple<std::size_t, std::vector<bool>, std::vector<u64>>> rows;
    u64 order = g.order() % q;
    for (auto& s : spaces) {
        auto w = s[0];
        if (w[0] == 0) return std::nullopt;
        u64 n0 = invmod(w[0], q);
        for (auto& x : w) x = x * n0 % q;
        u64 sum = 0;
        for (std::size_t i = 0; i < k; ++i)
            sum = (sum + w[i] * w[g.inverse_class(i)] % q * invmod(cls[i].size() % q, q)) % q;
        if (sum == 0) return std::nullopt;
        u64 d2 = order * invmod(sum, q) % q;
        std::size_t deg = 0;
        for (std::size_t d = 1; d * d <= g.order(); ++d)
            if (d * d % q == d2) {
                deg = d;
                break;
            }
        if (deg == 0) return std::nullopt;
        std::vector<bool> ker(k);
        std::vector<u64> vals(k);
        for (std::size_t i = 0; i < k; ++i) {
            ker[i] = w[i] == cls[i].size() % q;
            vals[i] = deg % q * w[i] % q * invmod(cls[i].size() % q, q) % q;
        }
        rows.emplace_back(deg, std::move(ker), std::move(vals));
    }
    std::sort(rows.begin(), rows.end());
    PrimeResult r;
    for (auto& [d, ker, vals] : rows) {
        r.chars.emplace_back(d, ker);
        r.values.push_back(vals);
    }
    return r;
}

std::vector<bool> element_closure(const PermGroup& g, const std::vector<bool>& class_set) {
    const auto& cls = g.conjugacy_classes();
    std::vector<ElementId> gens;
    for (std::size_t c = 0; c < cls.size(); ++c)
        if (class_set[c]) gens.insert(gens.end(), cls[c].begin(), cls[c].end());
    std::vector<bool> in(g.order(), false);
    std::vector<ElementId> list{0};
    in[0] = true;
    for (std::size_t i = 0; i < list.size(); ++i)
        for (ElementId s : gens) {
            ElementId y = g.mul(list[i], s);
            if (!in[y]) {
                in[y] = true;
                list.push_back(y);
            }
        }
    return in;
}

std::vector<bool> to_classes(const PermGroup& g, const std::vector<bool>& elems) {
    std::vector<bool> out(g.conjugacy_classes().size(), false);
    for (ElementId x = 0; x < g.order(); ++x)
        if (elems[x]) out[g.class_of(x)] = true;
    return out;
}

constexpr std::size_t kNormalCap = 4096;

std::vector<std::vector<bool>> normal_subgroups(const PermGroup& g) {
    std::size_t k = g.conjugacy_classes().size();
    std::vector<bool> triv(k, false);
    triv[0] = true;
    std::map<std::vector<bool>, bool> seen{{triv, true}};
    std::vector<std::vector<bool>> out{triv};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t c = 1; c < k; ++c) {
            if (out[i][c]) continue;
            auto s = out[i];
            s[c] = true;
            auto n = to_classes(g, element_closure(g, s));
            if (seen.emplace(n, true).second) {
                out.push_back(n);
                if (out.size() > kNormalCap)
                    throw Error(Errc::UnsupportedParameter, "too many normal subgroups to validate");
            }
        }
    return out;
}

}  // namespace

CharacterTable character_table(const PermGroup& g) {
    if (g.order() > CharacterTable::kMaxOrder)
        throw Error(Errc::UnsupportedParameter, "character tables are limited to order " +
                                                    std::to_string(CharacterTable::kMaxOrder));
    const auto& cls = g.conjugacy_classes();
    std::size_t k = cls.size();
    u64 e = g.exponent();
    u64 floor_q = static_cast<u64>(2.0 * std::sqrt(static_cast<double>(g.order()))) + 1;
    constexpr u64 kSearchLimit = u64(1) << 31;
    std::vector<u64> primes;
    for (u64 q = e + 1; q < kSearchLimit && primes.size() < 5; q += e)
        if (q > floor_q && is_prime(q)) primes.push_back(q);
    if (primes.size() < 5) throw Error(Errc::NoAdmissiblePrime, "fewer than five admissible primes found");

    ClassAlgebra alg(g);
    std::vector<std::pair<u64, PrimeResult>> results;
    for (u64 q : primes)
        if (auto r = solve_at(g, alg, q)) results.emplace_back(q, std::move(*r));

    // Majority over the primes; at least three must agree.
    std::map<std::vector<std::pair<std::size_t, std::vector<bool>>>, std::vector<std::size_t>> votes;
    for (std::size_t i = 0; i < results.size(); ++i) votes[results[i].second.chars].push_back(i);
    const std::vector<std::size_t>* best = nullptr;
    const std::vector<std::pair<std::size_t, std::vector<bool>>>* sig = nullptr;
    for (const auto& [s, idx] : votes)
        if (!best || idx.size() > best->size()) {
            best = &idx;
            sig = &s;
        }
    if (!best || best->size() < 3) throw Error(Errc::ValidationFailed, "fewer than three primes agree");

    CharacterTable t;
    for (const auto& [d, ker] : *sig) {
        t.degrees.push_back(d);
        t.kernel_classes.push_back(ker);
        std::vector<ElementId> elems;
        for (std::size_t c = 0; c < k; ++c)
            if (ker[c]) elems.insert(elems.end(), cls[c].begin(), cls[c].end());
        std::sort(elems.begin(), elems.end());
        t.kernels.push_back(std::move(elems));
    }
    for (auto i : *best) {
        t.verified_primes.push_back(results[i].first);
        t.values_mod_q.push_back(results[i].second.values);
    }

    std::size_t sum = 0;
    for (auto d : t.degrees) sum += d * d;
    if (sum != g.order() || t.degrees.size() != k) throw Error(Errc::ValidationFailed, "degree identity fails");
    for (std::size_t i = 0; i < t.kernels.size(); ++i) {
        auto closed = element_closure(g, t.kernel_classes[i]);
        if (static_cast<std::size_t>(std::count(closed.begin(), closed.end(), true)) != t.kernels[i].size())
            throw Error(Errc::ValidationFailed, "a kernel is not a subgroup");
    }
    for (const auto& n : normal_subgroups(g)) {
        std::size_t size = 0, acc = 0;
        for (std::size_t c = 0; c < k; ++c)
            if (n[c]) size += cls[c].size();
        for (std::size_t i = 0; i < t.degrees.size(); ++i) {
            bool contains = true;
            for (std::size_t c = 0; c < k && contains; ++c)
                if (n[c] && !t.kernel_classes[i][c]) contains = false;
            if (contains) acc += t.degrees[i] * t.degrees[i];
        }
        if (acc * size != g.order()) throw Error(Errc::ValidationFailed, "quotient degree identity fails");
    }
    return t;
}

}  // namespace leo::chars
