#include "leo/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "leo/error.hpp"

namespace leo::groups {

Perm::Perm(std::vector<std::uint16_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (auto v : img_) {
        if (v >= img_.size() || seen[v])
            throw Error(Errc::InvalidArgument, "image array is not a bijection");
        seen[v] = true;
    }
}

Perm Perm::identity(std::size_t n) {
    std::vector<std::uint16_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    Perm p;
    p.img_ = std::move(v);
    return p;
}

Perm Perm::from_cycles(std::size_t n, const std::vector<std::vector<int>>& cycles) {
    std::vector<std::uint16_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    std::vector<bool> used(n, false);
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            int a = c[i];
            int b = c[(i + 1) % c.size()];
            if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
                throw Error(Errc::InvalidArgument, "cycle point out of range");
            if (used[a]) throw Error(Errc::InvalidArgument, "cycles are not disjoint");
            used[a] = true;
            v[a] = static_cast<std::uint16_t>(b);
        }
    }
    return Perm(std::move(v));
}

Perm Perm::parse_cycles(std::size_t n, std::string_view text) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (ch == ' ' || ch == '\t') { ++i; continue; }
        if (ch != '(') throw Error(Errc::ParseError, "expected '(' in cycle notation");
        auto close = text.find(')', i);
        if (close == std::string_view::npos) throw Error(Errc::ParseError, "unbalanced cycle");
        std::string body(text.substr(i + 1, close - i - 1));
        std::replace(body.begin(), body.end(), ',', ' ');
        std::istringstream in(body);
        std::vector<int> cyc;
        int x;
        while (in >> x) cyc.push_back(x);
        if (!in.eof()) throw Error(Errc::ParseError, "bad point in cycle");
        if (cyc.size() > 1) cycles.push_back(std::move(cyc));
        i = close + 1;
    }
    return from_cycles(n, cycles);
}

Perm Perm::operator*(const Perm& o) const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t x = 0; x < img_.size(); ++x) r.img_[x] = img_[o.img_[x]];
    return r;
}

Perm Perm::inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t x = 0; x < img_.size(); ++x) r.img_[img_[x]] = static_cast<std::uint16_t>(x);
    return r;
}

bool Perm::is_identity() const {
    for (std::size_t x = 0; x < img_.size(); ++x)
        if (img_[x] != x) return false;
    return true;
}

std::string Perm::cycle_string() const {
    std::string out;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t s = 0; s < img_.size(); ++s) {
        if (seen[s] || img_[s] == s) continue;
        out += '(';
        std::size_t x = s;
        bool first = true;
        while (!seen[x]) {
            seen[x] = true;
            if (!first) out += ' ';
            out += std::to_string(x);
            first = false;
            x = img_[x];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

std::string PermGroup::key(const Perm& p) {
    const auto& v = p.images();
    return std::string(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(std::uint16_t));
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> gens, std::size_t cap)
    : degree_(degree), gens_(std::move(gens)) {
    if (degree == 0 || degree > 65535) throw Error(Errc::InvalidArgument, "degree out of range");
    for (const auto& g : gens_)
        if (g.degree() != degree) throw Error(Errc::InvalidArgument, "generator degree mismatch");

    // Orbit closure from the identity under right multiplication by generators.
    std::vector<Perm> found{Perm::identity(degree)};
    std::unordered_map<std::string, std::size_t> seen{{key(found[0]), 0}};
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (const auto& g : gens_) {
            Perm h = found[i] * g;
            auto k = key(h);
            if (seen.emplace(k, found.size()).second) {
                found.push_back(std::move(h));
                if (found.size() > cap)
                    throw Error(Errc::ClosureTooLarge,
                                "closure exceeds cap of " + std::to_string(cap));
            }
        }
    }
    std::sort(found.begin(), found.end());
    elems_ = std::move(found);
    index_.reserve(elems_.size() * 2);
    for (std::size_t i = 0; i < elems_.size(); ++i)
        index_.emplace(key(elems_[i]), static_cast<ElementId>(i));

    const std::size_t n = elems_.size();
    if (n <= kTableLimit) {
        table_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                table_[a * n + b] = static_cast<std::uint16_t>(index_.at(key(elems_[a] * elems_[b])));
    }
    inv_.resize(n);
    for (std::size_t a = 0; a < n; ++a) inv_[a] = index_.at(key(elems_[a].inverse()));
    for (const auto& g : gens_) gen_ids_.push_back(index_.at(key(g)));

    elt_order_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t k = 1;
        ElementId x = static_cast<ElementId>(a);
        while (x != 0) {
            x = mul(x, static_cast<ElementId>(a));
            ++k;
        }
        elt_order_[a] = k;
        exponent_ = std::lcm(exponent_, k);
    }

    for (std::size_t i = 0; i < gen_ids_.size() && abelian_; ++i)
        for (std::size_t j = i + 1; j < gen_ids_.size(); ++j)
            if (mul(gen_ids_[i], gen_ids_[j]) != mul(gen_ids_[j], gen_ids_[i])) {
                abelian_ = false;
                break;
            }

    // Conjugacy classes: orbits under conjugation by the generators.
    std::vector<long> cls(n, -1);
    std::vector<std::vector<ElementId>> raw;
    for (std::size_t a = 0; a < n; ++a) {
        if (cls[a] >= 0) continue;
        std::vector<ElementId> orbit{static_cast<ElementId>(a)};
        cls[a] = static_cast<long>(raw.size());
        for (std::size_t i = 0; i < orbit.size(); ++i)
            for (auto g : gen_ids_) {
                ElementId y = conj(g, orbit[i]);
                if (cls[y] < 0) {
                    cls[y] = static_cast<long>(raw.size());
                    orbit.push_back(y);
                }
            }
        std::sort(orbit.begin(), orbit.end());
        raw.push_back(std::move(orbit));
    }
    std::sort(raw.begin(), raw.end(), [&](const auto& x, const auto& y) {
        auto kx = std::make_tuple(elt_order_[x[0]], x.size(), x[0]);
        auto ky = std::make_tuple(elt_order_[y[0]], y.size(), y[0]);
        return kx < ky;
    });
    classes_ = std::move(raw);
    class_of_.assign(n, 0);
    for (std::size_t c = 0; c < classes_.size(); ++c)
        for (auto x : classes_[c]) class_of_[x] = c;
}

std::optional<ElementId> PermGroup::find(const Perm& p) const {
    if (p.degree() != degree_) return std::nullopt;
    auto it = index_.find(key(p));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

ElementId PermGroup::index_of(const Perm& p) const {
    auto r = find(p);
    if (!r) throw Error(Errc::InvalidArgument, "permutation " + p.cycle_string() + " is not in the group");
    return *r;
}

ElementId PermGroup::mul(ElementId a, ElementId b) const {
    const std::size_t n = elems_.size();
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n + b];
    return index_.at(key(elems_[a] * elems_[b]));
}

ElementId PermGroup::pow(ElementId a, long long e) const {
    if (e < 0) {
        a = inv_[a];
        e = -e;
    }
    e %= static_cast<long long>(elt_order_[a]);
    ElementId r = 0;
    ElementId base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

bool PermGroup::is_cyclic() const {
    for (auto o : elt_order_)
        if (o == elems_.size()) return true;
    return false;
}

PermGroup group_from_generators(std::size_t degree, const std::vector<Perm>& gens, std::size_t cap) {
    return PermGroup(degree, gens, cap);
}

}  // namespace leo::groups
