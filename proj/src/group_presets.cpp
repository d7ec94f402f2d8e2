#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

#include "leo/error.hpp"
#include "leo/perm_group.hpp"

namespace leo::groups {

namespace {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// q = p^k with p prime; returns {p, k} or {0, 0}.
std::pair<long long, int> prime_power(long long q) {
    if (q < 2) return {0, 0};
    long long p = 2;
    while (q % p != 0) ++p;
    int k = 0;
    long long r = q;
    while (r % p == 0) {
        r /= p;
        ++k;
    }
    if (r != 1) return {0, 0};
    return {p, k};
}

Perm cycle_on(std::size_t n, std::vector<int> pts) { return Perm::from_cycles(n, {std::move(pts)}); }

// GF(p^k) with elements encoded base p; returns the multiplication table.
std::vector<int> field_mul_table(long long p, int k) {
    const int q = static_cast<int>(std::llround(std::pow(static_cast<double>(p), k)));
    auto digits = [&](int a) {
        std::vector<int> d(k);
        for (int i = 0; i < k; ++i) {
            d[i] = a % p;
            a /= p;
        }
        return d;
    };
    auto encode = [&](const std::vector<int>& d) {
        int a = 0;
        for (int i = k - 1; i >= 0; --i) a = a * p + d[i];
        return a;
    };
    // Monic irreducible modulus of degree k: brute-force over monic polynomials.
    std::vector<int> modulus;
    auto poly_mul_raw = [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        return r;
    };
    if (k == 1) {
        modulus = {0, 1};
    } else {
        std::vector<std::vector<int>> reducible;
        // products of monic polynomials of degree d and k-d
        auto monics = [&](int d) {
            std::vector<std::vector<int>> out;
            int count = static_cast<int>(std::llround(std::pow(static_cast<double>(p), d)));
            for (int c = 0; c < count; ++c) {
                std::vector<int> v(d + 1, 0);
                int x = c;
                for (int i = 0; i < d; ++i) {
                    v[i] = x % p;
                    x /= p;
                }
                v[d] = 1;
                out.push_back(v);
            }
            return out;
        };
        std::vector<std::vector<int>> red;
        for (int d = 1; d <= k / 2; ++d)
            for (const auto& a : monics(d))
                for (const auto& b : monics(k - d)) red.push_back(poly_mul_raw(a, b));
        std::sort(red.begin(), red.end());
        for (const auto& c : monics(k))
            if (!std::binary_search(red.begin(), red.end(), c)) {
                modulus = c;
                break;
            }
    }
    std::vector<int> table(static_cast<std::size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            auto r = poly_mul_raw(digits(a), digits(b));
            for (int i = static_cast<int>(r.size()) - 1; i >= k; --i) {
                int c = r[i];
                if (c == 0) continue;
                for (int j = 0; j <= k; ++j) r[i - k + j] = ((r[i - k + j] - c * modulus[j]) % p + p) % p;
            }
            r.resize(k);
            table[static_cast<std::size_t>(a) * q + b] = encode(r);
        }
    return table;
}

PermGroup affine_group(long long q) {
    auto [p, k] = prime_power(q);
    if (p == 0) throw Error(Errc::UnsupportedParameter, "Aff(q) needs a prime power q");
    if (q * (q - 1) > static_cast<long long>(PermGroup::kDefaultClosureCap))
        throw Error(Errc::UnsupportedParameter, "Aff(q) exceeds the closure cap");
    const int n = static_cast<int>(q);
    auto mul = field_mul_table(p, k);
    auto add = [&](int a, int b) {
        int r = 0, base = 1;
        for (int i = 0; i < k; ++i) {
            r += ((a % p + b % p) % p) * base;
            a /= p;
            b /= p;
            base *= p;
        }
        return r;
    };
    int omega = -1;
    for (int w = 1; w < n && omega < 0; ++w) {
        int x = w, ord = 1;
        while (x != 1) {
            x = mul[static_cast<std::size_t>(x) * n + w];
            ++ord;
        }
        if (ord == n - 1) omega = w;
    }
    std::vector<std::uint16_t> tr(n), sc(n);
    for (int x = 0; x < n; ++x) {
        tr[x] = static_cast<std::uint16_t>(add(x, 1));
        sc[x] = static_cast<std::uint16_t>(mul[static_cast<std::size_t>(omega) * n + x]);
    }
    std::vector<Perm> gens{Perm(tr)};
    if (n > 2) gens.push_back(Perm(sc));
    PermGroup g(n, gens);
    g.set_name("Aff(" + std::to_string(q) + ")");
    return g;
}

PermGroup sl2_group(long long l) {
    if (!is_prime(l)) throw Error(Errc::UnsupportedParameter, "SL2 preset needs a prime field size");
    if (l * (l * l - 1) > static_cast<long long>(PermGroup::kDefaultClosureCap))
        throw Error(Errc::UnsupportedParameter, "SL2(l) exceeds the closure cap");
    const int L = static_cast<int>(l);
    const int n = L * L - 1;
    auto idx = [&](int x, int y) { return x * L + y - 1; };
    auto act = [&](int a, int b, int c, int d) {
        std::vector<std::uint16_t> img(n);
        for (int x = 0; x < L; ++x)
            for (int y = 0; y < L; ++y) {
                if (x == 0 && y == 0) continue;
                int nx = ((a * x + b * y) % L + L) % L;
                int ny = ((c * x + d * y) % L + L) % L;
                img[idx(x, y)] = static_cast<std::uint16_t>(idx(nx, ny));
            }
        return Perm(img);
    };
    PermGroup g(n, {act(1, 1, 0, 1), act(0, -1, 1, 0)});
    g.set_name("SL2(" + std::to_string(l) + ")");
    return g;
}

PermGroup quaternion8() {
    // 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k, left multiplication by i and j
    Perm li(std::vector<std::uint16_t>{2, 3, 1, 0, 6, 7, 5, 4});
    Perm lj(std::vector<std::uint16_t>{4, 5, 7, 6, 1, 0, 2, 3});
    PermGroup g(8, {li, lj});
    g.set_name("Q8");
    return g;
}

}  // namespace

PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
    const std::size_t n = a.degree() + b.degree();
    std::vector<Perm> gens;
    auto lift = [&](const Perm& p, std::size_t offset) {
        std::vector<std::uint16_t> img(n);
        std::iota(img.begin(), img.end(), 0);
        for (std::size_t x = 0; x < p.degree(); ++x)
            img[offset + x] = static_cast<std::uint16_t>(offset + p(x));
        return Perm(img);
    };
    for (const auto& g : a.generators()) gens.push_back(lift(g, 0));
    for (const auto& g : b.generators()) gens.push_back(lift(g, a.degree()));
    PermGroup g(n, gens);
    g.set_name(a.name() + "x" + b.name());
    return g;
}

PermGroup preset_group(const std::string& family, long long n) {
    const auto cap = static_cast<long long>(PermGroup::kDefaultClosureCap);
    if (family == "S") {
        if (n < 1 || n > 7) throw Error(Errc::UnsupportedParameter, "Sn supported for 1 <= n <= 7");
        std::vector<Perm> gens;
        if (n >= 2) {
            gens.push_back(cycle_on(n, {0, 1}));
            std::vector<int> c(n);
            std::iota(c.begin(), c.end(), 0);
            if (n >= 3) gens.push_back(cycle_on(n, c));
        }
        PermGroup g(n, gens);
        g.set_name("S" + std::to_string(n));
        return g;
    }
    if (family == "A") {
        if (n < 1 || n > 8) throw Error(Errc::UnsupportedParameter, "An supported for 1 <= n <= 8");
        std::vector<Perm> gens;
        for (int i = 2; i < n; ++i) gens.push_back(cycle_on(n, {0, 1, i}));
        PermGroup g(n, gens);
        g.set_name("A" + std::to_string(n));
        return g;
    }
    if (family == "C") {
        if (n < 1 || n > cap) throw Error(Errc::UnsupportedParameter, "Cn parameter out of range");
        std::vector<Perm> gens;
        if (n > 1) {
            std::vector<int> c(n);
            std::iota(c.begin(), c.end(), 0);
            gens.push_back(cycle_on(n, c));
        }
        PermGroup g(n, gens);
        g.set_name("C" + std::to_string(n));
        return g;
    }
    if (family == "D") {
        if (n < 2 || n % 2 != 0 || n > cap) throw Error(Errc::UnsupportedParameter, "D2n needs an even order");
        if (n == 2) return preset_group("C", 2);
        if (n == 4) {
            auto g = direct_product(preset_group("C", 2), preset_group("C", 2));
            g.set_name("D4");
            return g;
        }
        const long long m = n / 2;
        std::vector<int> rot(m);
        std::iota(rot.begin(), rot.end(), 0);
        std::vector<std::vector<int>> refl;
        for (long long i = 1; i < m - i; ++i) refl.push_back({static_cast<int>(i), static_cast<int>(m - i)});
        PermGroup g(m, {cycle_on(m, rot), Perm::from_cycles(m, refl)});
        g.set_name("D" + std::to_string(n));
        return g;
    }
    if (family == "Q") {
        if (n != 8) throw Error(Errc::UnsupportedParameter, "only Q8 is provided");
        return quaternion8();
    }
    if (family == "V") {
        if (n != 4) throw Error(Errc::UnsupportedParameter, "only V4 is provided");
        auto g = direct_product(preset_group("C", 2), preset_group("C", 2));
        g.set_name("V4");
        return g;
    }
    if (family == "Aff") return affine_group(n);
    if (family == "SL2") return sl2_group(n);
    throw Error(Errc::UnsupportedParameter, "unknown group family '" + family + "'");
}

PermGroup parse_group_ref(const std::string& ref) {
    std::string s;
    for (char c : ref)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error(Errc::ParseError, "empty group reference");
    // products like C2xC4
    if (s.find('x') != std::string::npos && s.find("Aff") == std::string::npos) {
        std::size_t start = 0;
        std::optional<PermGroup> acc;
        while (start <= s.size()) {
            auto pos = s.find('x', start);
            std::string part = s.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
            PermGroup g = parse_group_ref(part);
            acc = acc ? direct_product(*acc, g) : g;
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        acc->set_name(s);
        return *acc;
    }
    auto number = [&](const std::string& t) -> long long {
        if (t.empty() || t.size() > 12 || !std::all_of(t.begin(), t.end(), ::isdigit))
            throw Error(Errc::ParseError, "bad group parameter in '" + ref + "'");
        return std::stoll(t);
    };
    auto paren = [&](std::size_t prefix) {
        if (s.size() < prefix + 3 || s[prefix] != '(' || s.back() != ')')
            throw Error(Errc::ParseError, "expected parenthesised parameter in '" + ref + "'");
        return number(s.substr(prefix + 1, s.size() - prefix - 2));
    };
    if (s.rfind("Aff", 0) == 0) return preset_group("Aff", paren(3));
    if (s.rfind("SL2", 0) == 0) return preset_group("SL2", paren(3));
    const std::string fam(1, s[0]);
    if (fam == "S" || fam == "A" || fam == "C" || fam == "D" || fam == "Q" || fam == "V")
        return preset_group(fam, number(s.substr(1)));
    throw Error(Errc::ParseError, "unknown group reference '" + ref + "'");
}

}  // namespace leo::groups
