#pragma once
// Brute-force reference computations used only by tests.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "leo/perm_group.hpp"

namespace oracle {

using leo::groups::Perm;

// Closure by multiplying every pair until nothing new appears.
inline std::set<Perm> naive_closure(std::size_t n, const std::vector<Perm>& gens) {
    std::set<Perm> s{Perm::identity(n)};
    s.insert(gens.begin(), gens.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Perm> cur(s.begin(), s.end());
        for (const auto& a : cur)
            for (const auto& b : cur)
                if (s.insert(a * b).second) grew = true;
    }
    return s;
}

// Conjugacy class sizes by conjugating with every element.
inline std::multiset<std::size_t> naive_class_sizes(const std::set<Perm>& g) {
    std::set<Perm> done;
    std::multiset<std::size_t> sizes;
    for (const auto& x : g) {
        if (done.count(x)) continue;
        std::set<Perm> cl;
        for (const auto& y : g) cl.insert(y * x * y.inverse());
        done.insert(cl.begin(), cl.end());
        sizes.insert(cl.size());
    }
    return sizes;
}

// All subgroups generated by at most three elements.
inline std::set<std::set<Perm>> naive_subgroups(const std::set<Perm>& g, int max_gens = 3) {
    std::vector<Perm> el(g.begin(), g.end());
    std::size_t n = el.front().degree();
    std::set<std::set<Perm>> out;
    std::function<void(std::vector<Perm>&, std::size_t, int)> rec = [&](std::vector<Perm>& gens,
                                                                        std::size_t start, int left) {
        out.insert(naive_closure(n, gens));
        if (left == 0) return;
        for (std::size_t i = start; i < el.size(); ++i) {
            gens.push_back(el[i]);
            rec(gens, i + 1, left - 1);
            gens.pop_back();
        }
    };
    std::vector<Perm> gens;
    rec(gens, 0, max_gens);
    return out;
}

inline bool subset_of(const std::set<Perm>& a, const std::set<Perm>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Philip Hall: mu(a,b) = sum_i (-1)^i * #chains a = c0 < c1 < ... < ci = b.
inline long long chain_mobius(const std::vector<std::set<Perm>>& subs, std::size_t a, std::size_t b) {
    if (a == b) return 1;
    std::map<std::size_t, std::map<int, long long>> memo;
    std::function<std::map<int, long long>(std::size_t)> chains = [&](std::size_t x) {
        // number of chains from x to b by length
        if (memo.count(x)) return memo[x];
        std::map<int, long long> res;
        if (x == b) {
            res[0] = 1;
        } else {
            for (std::size_t y = 0; y < subs.size(); ++y) {
                if (y == x || subs[y].size() <= subs[x].size()) continue;
                if (!subset_of(subs[x], subs[y]) || !subset_of(subs[y], subs[b])) continue;
                for (auto [len, cnt] : chains(y)) res[len + 1] += cnt;
            }
        }
        memo[x] = res;
        return res;
    };
    long long mu = 0;
    for (auto [len, cnt] : chains(a)) mu += (len % 2 == 0 ? 1 : -1) * cnt;
    return mu;
}

}  // namespace oracle
