#include <algorithm>
#include <map>
#include <numeric>

#include "leo/perm_group.hpp"
#include "leo/subgroup_lattice.hpp"

namespace leo::groups {

namespace {

std::vector<std::size_t> prime_factors(std::size_t n) {
    std::vector<std::size_t> ps;
    for (std::size_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

std::string abelian_name(const std::map<std::size_t, std::size_t>& order_count, std::size_t n) {
    // exponents of the p-parts, read off from #{x : x^(p^k) = 1}
    std::vector<std::vector<std::size_t>> parts;
    std::vector<std::size_t> primes = prime_factors(n);
    for (auto p : primes) {
        std::size_t pk = 1, prev_log = 0;
        std::vector<std::size_t> ge;  // ge[k-1] = #{i : e_i >= k}
        while (true) {
            pk *= p;
            std::size_t cnt = 0;
            for (auto [o, c] : order_count)
                if (pk % o == 0) cnt += c;
            std::size_t lg = 0;
            for (std::size_t x = cnt; x > 1; x /= p) ++lg;
            if (lg == prev_log) break;
            ge.push_back(lg - prev_log);
            prev_log = lg;
        }
        std::vector<std::size_t> exps;
        for (std::size_t k = 0; k < ge.size(); ++k) {
            std::size_t next = k + 1 < ge.size() ? ge[k + 1] : 0;
            for (std::size_t i = 0; i < ge[k] - next; ++i) exps.push_back(k + 1);
        }
        std::sort(exps.rbegin(), exps.rend());
        std::vector<std::size_t> pw;
        for (auto e : exps) {
            std::size_t v = 1;
            for (std::size_t i = 0; i < e; ++i) v *= p;
            pw.push_back(v);
        }
        parts.push_back(pw);
    }
    std::size_t len = 0;
    for (const auto& v : parts) len = std::max(len, v.size());
    std::vector<std::size_t> inv(len, 1);
    for (const auto& v : parts)
        for (std::size_t i = 0; i < v.size(); ++i) inv[i] *= v[i];
    std::sort(inv.begin(), inv.end());
    if (inv.size() == 2 && inv[0] == 2 && inv[1] == 2) return "V4";
    std::string s;
    for (auto d : inv) s += (s.empty() ? "C" : "xC") + std::to_string(d);
    return s;
}

}  // namespace

std::string structure_name_of(const PermGroup& g, const std::vector<ElementId>& elems) {
    const std::size_t n = elems.size();
    std::map<std::size_t, std::size_t> oc;
    std::size_t max_order = 1;
    for (auto x : elems) {
        ++oc[g.element_order(x)];
        max_order = std::max(max_order, g.element_order(x));
    }
    if (max_order == n) return "C" + std::to_string(n);
    bool abelian = true;
    for (std::size_t i = 0; i < n && abelian; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g.mul(elems[i], elems[j]) != g.mul(elems[j], elems[i])) {
                abelian = false;
                break;
            }
    if (abelian) return abelian_name(oc, n);

    auto count = [&](std::size_t o) { return oc.count(o) ? oc.at(o) : 0; };
    const std::size_t invs = count(2);
    // dihedral: an element of order n/2 whose complement consists of involutions
    if (n % 2 == 0 && max_order == n / 2) {
        for (auto x : elems) {
            if (g.element_order(x) != n / 2) continue;
            std::vector<bool> in_cyc(g.order(), false);
            ElementId y = 0;
            for (std::size_t k = 0; k < n / 2; ++k) {
                in_cyc[y] = true;
                y = g.mul(y, x);
            }
            bool dihedral = true;
            for (auto z : elems)
                if (!in_cyc[z] && g.element_order(z) != 2) {
                    dihedral = false;
                    break;
                }
            if (dihedral) return n == 6 ? "S3" : "D" + std::to_string(n);
            break;
        }
    }
    if (n == 8 && invs == 1) return "Q8";
    if (n == 12 && invs == 3 && count(6) == 0) return "A4";
    if (n == 12 && invs == 1) return "Dic12";
    if (n == 20 && invs == 5 && count(4) == 10) return "F20";
    if (n == 21) return "F21";
    if (n == 24 && invs == 9 && count(3) == 8 && count(4) == 6) return "S4";
    if (n == 24 && invs == 1 && count(3) == 8 && count(4) == 6 && count(6) == 8) return "SL2(3)";
    if (n == 42 && invs == 7 && count(6) == 14) return "F42";
    if (n == 60 && invs == 15 && count(3) == 20 && count(5) == 24) return "A5";
    if (n == 120 && invs == 1) return "SL2(5)";
    if (n == 120 && invs == 25) return "S5";
    return "G" + std::to_string(n);
}

std::string structure_name(const PermGroup& g) {
    std::vector<ElementId> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    return structure_name_of(g, all);
}

}  // namespace leo::groups
