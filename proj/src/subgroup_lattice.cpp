#include "leo/subgroup_lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "leo/error.hpp"

namespace leo::groups {

std::string SubgroupLattice::bits_key(const Bits& b) {
    return std::string(reinterpret_cast<const char*>(b.data()), b.size() * sizeof(std::uint64_t));
}

Bits SubgroupLattice::make_bits(const std::vector<ElementId>& elems) const {
    Bits b((group_->order() + 63) / 64, 0);
    for (auto x : elems) b[x >> 6] |= std::uint64_t{1} << (x & 63);
    return b;
}

Subgroup SubgroupLattice::closure(const std::vector<ElementId>& seed,
                                  const std::vector<ElementId>& gens) const {
    const PermGroup& G = *group_;
    Subgroup s;
    s.bits.assign((G.order() + 63) / 64, 0);
    auto add = [&](ElementId x) {
        if ((s.bits[x >> 6] >> (x & 63)) & 1u) return;
        s.bits[x >> 6] |= std::uint64_t{1} << (x & 63);
        s.elements.push_back(x);
    };
    add(PermGroup::identity());
    for (auto x : seed) add(x);
    for (std::size_t i = 0; i < s.elements.size(); ++i)
        for (auto g : gens) add(G.mul(s.elements[i], g));
    std::sort(s.elements.begin(), s.elements.end());
    s.gens = gens;
    return s;
}

SubgroupLattice::SubgroupLattice(std::shared_ptr<const PermGroup> g, std::size_t cap)
    : group_(std::move(g)) {
    const PermGroup& G = *group_;
    if (G.order() > cap)
        throw Error(Errc::ClosureTooLarge,
                    "subgroup lattice needs |G| <= " + std::to_string(cap));

    std::unordered_map<std::string, std::size_t> seen;
    std::vector<Subgroup> found;
    auto insert = [&](Subgroup s) {
        auto k = bits_key(s.bits);
        if (seen.emplace(k, found.size()).second) found.push_back(std::move(s));
    };
    // cyclic subgroups
    std::vector<ElementId> cyc_gens;
    for (ElementId x = 0; x < G.order(); ++x) {
        Subgroup s = closure({}, x == 0 ? std::vector<ElementId>{} : std::vector<ElementId>{x});
        auto before = found.size();
        insert(std::move(s));
        if (found.size() > before && x != 0) cyc_gens.push_back(x);
    }
    // joins with cyclic subgroups until no new subgroup appears
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (auto x : cyc_gens) {
            if (found[i].contains(x)) continue;
            auto gens = found[i].gens;
            gens.push_back(x);
            Subgroup j = closure(found[i].elements, gens);
            insert(std::move(j));
        }
    }
    std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements < b.elements;
    });
    subs_ = std::move(found);
    const std::size_t n = subs_.size();

    cyclic_.assign(n, false);
    for (std::size_t i = 0; i < n; ++i)
        for (auto x : subs_[i].elements)
            if (G.element_order(x) == subs_[i].order()) {
                cyclic_[i] = true;
                break;
            }

    leq_.assign(n * n, false);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            if (subs_[b].order() % subs_[a].order() != 0) continue;
            bool sub = true;
            for (std::size_t w = 0; w < subs_[a].bits.size() && sub; ++w)
                if ((subs_[a].bits[w] & ~subs_[b].bits[w]) != 0) sub = false;
            leq_[a * n + b] = sub;
        }

    // Moebius: mu(b,b)=1, mu(a,b) = -sum_{a<c<=b} mu(c,b)
    mobius_.assign(n * n, 0);
    for (std::size_t b = 0; b < n; ++b) {
        std::vector<std::size_t> down;
        for (std::size_t a = 0; a <= b; ++a)
            if (leq(a, b)) down.push_back(a);
        mobius_[b * n + b] = 1;
        for (std::size_t ii = down.size() - 1; ii-- > 0;) {
            std::size_t a = down[ii];
            long long s = 0;
            for (std::size_t jj = ii + 1; jj < down.size(); ++jj)
                if (leq(a, down[jj])) s += mobius_[down[jj] * n + b];
            mobius_[a * n + b] = -s;
        }
    }

    // conjugacy classes of subgroups
    std::unordered_map<std::string, std::size_t> where;
    for (std::size_t i = 0; i < n; ++i) where.emplace(bits_key(subs_[i].bits), i);
    std::vector<long> cls(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (cls[i] >= 0) continue;
        std::vector<std::size_t> orbit{i};
        cls[i] = static_cast<long>(class_members_.size());
        for (std::size_t k = 0; k < orbit.size(); ++k)
            for (auto gg : G.generator_ids()) {
                std::vector<ElementId> img;
                img.reserve(subs_[orbit[k]].order());
                for (auto x : subs_[orbit[k]].elements) img.push_back(G.conj(gg, x));
                std::size_t j = where.at(bits_key(make_bits(img)));
                if (cls[j] < 0) {
                    cls[j] = cls[i];
                    orbit.push_back(j);
                }
            }
        std::sort(orbit.begin(), orbit.end());
        class_members_.push_back(std::move(orbit));
    }
    class_of_.assign(n, 0);
    for (std::size_t c = 0; c < class_members_.size(); ++c)
        for (auto i : class_members_[c]) class_of_[i] = c;

    std::map<std::string, std::vector<std::size_t>> by_name;
    labels_.resize(class_members_.size());
    for (std::size_t c = 0; c < class_members_.size(); ++c) {
        labels_[c] = structure_name_of(G, subs_[class_rep(c)].elements);
        by_name[labels_[c]].push_back(c);
    }
    for (auto& [name, cs] : by_name)
        if (cs.size() > 1)
            for (std::size_t k = 0; k < cs.size(); ++k) {
                std::string suffix = k < 26 ? std::string(1, static_cast<char>('a' + k))
                                            : "_" + std::to_string(k);
                labels_[cs[k]] = name + suffix;
            }

    std::vector<ElementId> comms;
    for (ElementId a = 0; a < G.order(); ++a)
        for (ElementId b = 0; b < G.order(); ++b)
            comms.push_back(G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    derived_ = generated_by(comms);
}

long long SubgroupLattice::mobius(std::size_t a, std::size_t b) const {
    return mobius_[a * subs_.size() + b];
}

long long SubgroupLattice::mobius_in(const std::vector<bool>& member, std::size_t a, std::size_t b) const {
    if (!member[a] || !member[b] || !leq(a, b)) return 0;
    std::vector<std::size_t> down;
    for (std::size_t c = a; c <= b; ++c)
        if (member[c] && leq(a, c) && leq(c, b)) down.push_back(c);
    std::vector<long long> mu(down.size(), 0);
    mu.back() = 1;
    for (std::size_t ii = down.size() - 1; ii-- > 0;) {
        long long s = 0;
        for (std::size_t jj = ii + 1; jj < down.size(); ++jj)
            if (leq(down[ii], down[jj])) s += mu[jj];
        mu[ii] = -s;
    }
    return mu.front();
}

std::optional<std::size_t> SubgroupLattice::class_by_label(const std::string& s) const {
    for (std::size_t c = 0; c < labels_.size(); ++c)
        if (labels_[c] == s) return c;
    if (!s.empty() && std::all_of(s.begin(), s.end(), ::isdigit)) {
        auto c = std::stoull(s);
        if (c < labels_.size()) return c;
    }
    return std::nullopt;
}

bool SubgroupLattice::is_abelian(std::size_t i) const {
    const auto& e = subs_[i].gens;
    for (std::size_t a = 0; a < e.size(); ++a)
        for (std::size_t b = a + 1; b < e.size(); ++b)
            if (group_->mul(e[a], e[b]) != group_->mul(e[b], e[a])) return false;
    return true;
}

std::optional<std::size_t> SubgroupLattice::find(const Bits& b) const {
    // subgroups sorted by (order, elements); binary search on that key
    std::vector<ElementId> elems;
    for (std::size_t w = 0; w < b.size(); ++w)
        for (std::size_t k = 0; k < 64; ++k)
            if ((b[w] >> k) & 1u) elems.push_back(static_cast<ElementId>(w * 64 + k));
    return find_elements(std::move(elems));
}

std::optional<std::size_t> SubgroupLattice::find_elements(std::vector<ElementId> elems) const {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    auto it = std::lower_bound(subs_.begin(), subs_.end(), elems, [](const Subgroup& s, const auto& e) {
        if (s.order() != e.size()) return s.order() < e.size();
        return s.elements < e;
    });
    if (it == subs_.end() || it->elements != elems) return std::nullopt;
    return static_cast<std::size_t>(it - subs_.begin());
}

std::size_t SubgroupLattice::generated_by(const std::vector<ElementId>& gens) const {
    Subgroup s = closure({}, gens);
    return *find_elements(s.elements);
}

std::size_t SubgroupLattice::intersection(std::size_t a, std::size_t b) const {
    std::vector<ElementId> out;
    for (auto x : subs_[a].elements)
        if (subs_[b].contains(x)) out.push_back(x);
    return *find_elements(out);
}

std::size_t SubgroupLattice::join(std::size_t a, std::size_t b) const {
    auto gens = subs_[a].gens;
    gens.insert(gens.end(), subs_[b].gens.begin(), subs_[b].gens.end());
    return generated_by(gens);
}

std::optional<std::size_t> SubgroupLattice::product(std::size_t a, std::size_t b) const {
    std::vector<ElementId> prod;
    for (auto x : subs_[a].elements)
        for (auto y : subs_[b].elements) prod.push_back(group_->mul(x, y));
    return find_elements(prod);
}

std::size_t SubgroupLattice::conjugate(std::size_t i, ElementId g) const {
    std::vector<ElementId> img;
    for (auto x : subs_[i].elements) img.push_back(group_->conj(g, x));
    return *find_elements(img);
}

bool SubgroupLattice::quotient_abelian(std::size_t normal) const { return leq(derived_, normal); }

bool SubgroupLattice::quotient_cyclic(std::size_t normal) const {
    const PermGroup& G = *group_;
    const std::size_t idx = G.order() / subs_[normal].order();
    for (ElementId g = 0; g < G.order(); ++g) {
        std::size_t k = 1;
        ElementId x = g;
        while (!subs_[normal].contains(x)) {
            x = G.mul(x, g);
            ++k;
        }
        if (k == idx) return true;
    }
    return false;
}

std::optional<FrobeniusStructure> frobenius_structure(const SubgroupLattice& lat) {
    const PermGroup& G = lat.group();
    for (std::size_t c = 0; c < lat.num_classes(); ++c) {
        std::size_t h = lat.class_rep(c);
        const auto& H = lat.subgroup(h);
        if (H.order() == 1 || H.order() == G.order()) continue;
        const auto& conjs = lat.class_members(c);
        // self-normalising: one conjugate per coset
        if (conjs.size() * H.order() != G.order()) continue;
        bool meet_trivial = true;
        for (std::size_t i = 0; i < conjs.size() && meet_trivial; ++i)
            for (std::size_t j = i + 1; j < conjs.size(); ++j)
                if (lat.subgroup(lat.intersection(conjs[i], conjs[j])).order() != 1) {
                    meet_trivial = false;
                    break;
                }
        if (!meet_trivial) continue;
        std::vector<bool> covered(G.order(), false);
        for (auto k : conjs)
            for (auto x : lat.subgroup(k).elements)
                if (x != PermGroup::identity()) covered[x] = true;
        std::vector<ElementId> kernel;
        for (ElementId x = 0; x < G.order(); ++x)
            if (!covered[x]) kernel.push_back(x);
        if (kernel.size() * H.order() != G.order()) continue;
        auto n = lat.find_elements(kernel);
        if (!n || !lat.is_normal(*n)) continue;
        return FrobeniusStructure{*n, h};
    }
    return std::nullopt;
}

namespace {

bool is_prime_sz(std::size_t n) {
    if (n < 2) return false;
    for (std::size_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_semiprime(std::size_t n) {
    for (std::size_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return is_prime_sz(n / p);
    return false;
}

}  // namespace

bool admits_useful_relation(const SubgroupLattice& lat) {
    for (std::size_t i = 0; i < lat.size(); ++i)
        if (!lat.is_cyclic(i) && is_semiprime(lat.subgroup(i).order())) return true;
    return false;
}

bool admits_useful_relation(const PermGroup& g) {
    // x of order l2, y of order l1 with <x,y> non-cyclic of order l1*l2
    std::vector<std::vector<ElementId>> by_prime_order(g.order() + 1);
    for (ElementId x = 0; x < g.order(); ++x)
        if (is_prime_sz(g.element_order(x))) by_prime_order[g.element_order(x)].push_back(x);
    for (std::size_t l2 = 2; l2 <= g.order(); ++l2) {
        if (by_prime_order[l2].empty()) continue;
        for (std::size_t l1 = 2; l1 <= l2; ++l1) {
            if (by_prime_order[l1].empty()) continue;
            for (auto x : by_prime_order[l2]) {
                std::vector<bool> in_x(g.order(), false);
                ElementId p = 0;
                for (std::size_t k = 0; k < l2; ++k) {
                    in_x[p] = true;
                    p = g.mul(p, x);
                }
                for (auto y : by_prime_order[l1]) {
                    if (in_x[y]) continue;
                    ElementId c = g.conj(y, x);
                    if (l1 == l2) {
                        if (c == x) return true;  // commuting, elementary abelian of order l^2
                    } else if (in_x[c] && c != x) {
                        return true;  // y normalises <x> without centralising it
                    }
                }
            }
        }
    }
    return false;
}

bool looks_like_fermat_sl2(const PermGroup& g, const std::vector<ElementId>& elems) {
    const std::size_t n = elems.size();
    for (std::size_t q : {17ul, 257ul, 65537ul}) {
        if (q * (q * q - 1) != n) continue;
        std::size_t involutions = 0;
        std::size_t two_part = 1;
        while (n % (two_part * 2) == 0) two_part *= 2;
        bool cyclic_sylow2 = false;
        for (auto x : elems) {
            if (g.element_order(x) == 2) ++involutions;
            if (g.element_order(x) == two_part) cyclic_sylow2 = true;
        }
        if (involutions == 1 && !cyclic_sylow2) return true;
    }
    return false;
}

bool admits_generalised_relation(const SubgroupLattice& lat) {
    if (admits_useful_relation(lat)) return true;
    for (std::size_t i = 0; i < lat.size(); ++i)
        if (looks_like_fermat_sl2(lat.group(), lat.subgroup(i).elements)) return true;
    return false;
}

bool admits_generalised_relation(const PermGroup& g) {
    std::vector<ElementId> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    if (looks_like_fermat_sl2(g, all)) return true;
    return admits_useful_relation(g);
}

}  // namespace leo::groups
