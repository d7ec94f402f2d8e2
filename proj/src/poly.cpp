#include "leo/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "leo/error.hpp"

namespace leo::nt {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly({c}); }
IntPoly IntPoly::x() { return IntPoly({0, 1}); }

IntPoly IntPoly::monomial(std::size_t deg, const mpz_class& c) {
    std::vector<mpz_class> v(deg + 1);
    v[deg] = c;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<mpz_class> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<mpz_class> v(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    return IntPoly(std::move(v));
}

IntPoly IntPoly::scaled(const mpz_class& s) const {
    std::vector<mpz_class> v = c_;
    for (auto& x : v) x *= s;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<mpz_class> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(v));
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
    // Horner on numerator and denominator powers keeps everything integral.
    const mpz_class& p = x.get_num();
    const mpz_class& q = x.get_den();
    mpz_class acc = 0, qpow = 1;
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc = acc * p + c_[i] * qpow;
        qpow *= q;
    }
    // acc = q^{n} f(p/q) where n = deg; qpow = q^{deg+1}
    mpq_class r(acc, qpow / q);
    r.canonicalize();
    return r;
}

int IntPoly::sign_at(const mpq_class& x) const { return sgn(eval(x)); }

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

IntPoly IntPoly::primitive() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (lc() < 0) g = -g;
    std::vector<mpz_class> v = c_;
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(v));
}

IntPoly IntPoly::rem_monic(const IntPoly& m) const {
    if (!m.is_monic()) throw Error(Errc::InvalidArgument, "divisor must be monic");
    std::vector<mpz_class> r = c_;
    std::size_t dm = m.c_.size() - 1;
    for (std::size_t i = r.size(); i-- > dm;) {
        if (r[i] == 0) continue;
        mpz_class q = r[i];
        for (std::size_t j = 0; j <= dm; ++j) r[i - dm + j] -= q * m.c_[j];
    }
    if (r.size() > dm) r.resize(dm);
    return IntPoly(std::move(r));
}

IntPoly IntPoly::quo_monic(const IntPoly& m) const {
    if (!m.is_monic()) throw Error(Errc::InvalidArgument, "divisor must be monic");
    std::size_t dm = m.c_.size() - 1;
    if (c_.size() <= dm) return IntPoly();
    std::vector<mpz_class> r = c_, q(c_.size() - dm);
    for (std::size_t i = r.size(); i-- > dm;) {
        q[i - dm] = r[i];
        if (r[i] == 0) continue;
        mpz_class t = r[i];
        for (std::size_t j = 0; j <= dm; ++j) r[i - dm + j] -= t * m.c_[j];
    }
    return IntPoly(std::move(q));
}

IntPoly IntPoly::mod(const mpz_class& n) const {
    std::vector<mpz_class> v = c_;
    for (auto& x : v) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    return IntPoly(std::move(v));
}

IntPoly IntPoly::smod(const mpz_class& n) const {
    std::vector<mpz_class> v = c_;
    mpz_class half = n / 2;
    for (auto& x : v) {
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
        if (x > half) x -= n;
    }
    return IntPoly(std::move(v));
}

IntPoly IntPoly::shift(const mpz_class& a) const {
    IntPoly r;
    IntPoly lin({a, 1});
    for (std::size_t i = c_.size(); i-- > 0;) r = r * lin + constant(c_[i]);
    return r;
}

mpz_class IntPoly::max_abs_coeff() const {
    mpz_class m = 0;
    for (const auto& x : c_) m = std::max<mpz_class>(m, abs(x));
    return m;
}

std::string IntPoly::str(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        mpz_class a = abs(c_[i]);
        if (first) {
            if (c_[i] < 0) os << "-";
        } else {
            os << (c_[i] < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || a != 1) {
            os << a;
            if (i > 0) os << "*";
        }
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

IntPoly parse_poly(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw Error(Errc::ParseError, "empty polynomial");
    if (s.front() == '[') {
        if (s.back() != ']') throw Error(Errc::ParseError, "unterminated coefficient list");
        std::vector<mpz_class> v;
        std::stringstream ss(s.substr(1, s.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                v.emplace_back(item);
            } catch (const std::invalid_argument&) {
                throw Error(Errc::ParseError, "bad coefficient '" + item + "'");
            }
        }
        return IntPoly(std::move(v));
    }
    std::vector<mpz_class> v;
    char var = 0;
    std::size_t i = 0;
    auto read_int = [&](std::string& out) {
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) out += s[i++];
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        } else if (i != 0) {
            throw Error(Errc::ParseError, "expected + or - in '" + text + "'");
        }
        std::string num;
        read_int(num);
        mpz_class coef = num.empty() ? mpz_class(1) : mpz_class(num);
        std::size_t exp = 0;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
            if (var && s[i] != var) throw Error(Errc::ParseError, "more than one variable in '" + text + "'");
            var = s[i++];
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                read_int(e);
                if (e.empty()) throw Error(Errc::ParseError, "missing exponent in '" + text + "'");
                exp = std::stoul(e);
            }
        } else if (num.empty()) {
            throw Error(Errc::ParseError, "dangling sign in '" + text + "'");
        }
        if (v.size() <= exp) v.resize(exp + 1);
        v[exp] += sign * coef;
    }
    return IntPoly(std::move(v));
}

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    int m = f.degree(), n = g.degree();
    if (m == 0) return pow_int(f.lc(), n);
    if (n == 0) return pow_int(g.lc(), m);
    std::size_t sz = m + n;
    std::vector<std::vector<mpz_class>> a(sz, std::vector<mpz_class>(sz));
    // rows 0..n-1 hold shifts of f, rows n..n+m-1 shifts of g (descending powers)
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) a[r][r + j] = f.coeff(m - j);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) a[n + r][r + j] = g.coeff(n - j);
    // Bareiss fraction-free elimination
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < sz; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < sz && a[p][k] == 0) ++p;
            if (p == sz) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < sz; ++i) {
            for (std::size_t j = k + 1; j < sz; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[sz - 1][sz - 1];
}

mpz_class discriminant(const IntPoly& f) {
    int n = f.degree();
    if (n < 1) throw Error(Errc::InvalidArgument, "discriminant of a constant");
    mpz_class r = resultant(f, f.derivative());
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.lc().get_mpz_t());
    if ((static_cast<long>(n) * (n - 1) / 2) % 2) r = -r;
    return r;
}

namespace {

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) a mod b.
IntPoly prem(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> r = a.coeffs();
    int db = b.degree();
    const mpz_class& l = b.lc();
    for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
        mpz_class t = r[i];
        for (auto& x : r) x *= l;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeff(j);
        r.resize(i);
    }
    return IntPoly(std::move(r));
}

}  // namespace

IntPoly gcd_q(const IntPoly& a0, const IntPoly& b0) {
    IntPoly a = a0.primitive(), b = b0.primitive();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = prem(a, b);
        a = b;
        b = r.primitive();
    }
    return a.primitive();
}

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw Error(Errc::InvalidArgument, "division by zero polynomial");
    std::vector<mpz_class> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) {
        if (a.is_zero()) return a;
        throw Error(Errc::InvalidArgument, "polynomial division is not exact");
    }
    std::vector<mpz_class> q(a.degree() - db + 1);
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), b.lc().get_mpz_t()))
            throw Error(Errc::InvalidArgument, "polynomial division is not exact");
        mpz_class t = r[i] / b.lc();
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeff(j);
    }
    for (const auto& x : r)
        if (x != 0) throw Error(Errc::InvalidArgument, "polynomial division is not exact");
    return IntPoly(std::move(q));
}

bool divides(const IntPoly& b, const IntPoly& a) {
    try {
        exact_div(a, b);
        return true;
    } catch (const Error&) {
        return false;
    }
}

bool squarefree(const IntPoly& f) { return gcd_q(f, f.derivative()).degree() == 0; }

std::vector<IntPoly> yun_decomposition(const IntPoly& f0) {
    IntPoly f = f0.primitive();
    std::vector<IntPoly> out;
    if (f.degree() < 1) return out;
    // Gauss's lemma: a primitive divisor over Q divides over Z.
    IntPoly g = gcd_q(f, f.derivative());
    IntPoly w = exact_div(f, g).primitive();
    while (w.degree() > 0) {
        IntPoly y = gcd_q(w, g);
        out.push_back(exact_div(w, y).primitive());
        w = y;
        g = exact_div(g, y).primitive();
    }
    return out;
}

mpz_class pow_int(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace leo::nt
