#include "leo/bipoly.hpp"

#include <sstream>

#include "leo/error.hpp"

namespace leo::nt {

BiPoly::BiPoly(std::vector<IntPoly> z_coeffs) : c_(std::move(z_coeffs)) { trim(); }

void BiPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BiPoly BiPoly::y() { return BiPoly({IntPoly::x()}); }
BiPoly BiPoly::z() { return BiPoly({IntPoly(), IntPoly::constant(1)}); }
BiPoly BiPoly::constant(const mpz_class& c) { return BiPoly({IntPoly::constant(c)}); }
BiPoly BiPoly::from_y(const IntPoly& p) { return BiPoly({p}); }

bool BiPoly::monic_in_z() const { return !c_.empty() && c_.back() == IntPoly::constant(1); }

BiPoly BiPoly::operator+(const BiPoly& o) const {
    std::vector<IntPoly> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = z_coeff(i) + o.z_coeff(i);
    return BiPoly(std::move(v));
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
    std::vector<IntPoly> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = z_coeff(i) - o.z_coeff(i);
    return BiPoly(std::move(v));
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
    if (c_.empty() || o.c_.empty()) return BiPoly();
    std::vector<IntPoly> v(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] = v[i + j] + c_[i] * o.c_[j];
    return BiPoly(std::move(v));
}

BiPoly BiPoly::rem_z(const BiPoly& f) const {
    if (!f.monic_in_z()) throw Error(Errc::InvalidArgument, "bivariate modulus must be monic in z");
    std::vector<IntPoly> r = c_;
    int df = f.degree_z();
    for (int i = static_cast<int>(r.size()) - 1; i >= df; --i) {
        if (r[i].is_zero()) continue;
        IntPoly q = r[i];
        for (int j = 0; j <= df; ++j) r[i - df + j] = r[i - df + j] - q * f.c_[j];
    }
    if (static_cast<int>(r.size()) > df) r.resize(df);
    return BiPoly(std::move(r));
}

BiPoly BiPoly::mod(const mpz_class& m) const {
    std::vector<IntPoly> v = c_;
    for (auto& p : v) p = p.mod(m);
    return BiPoly(std::move(v));
}

BiPoly BiPoly::pow_mod(const mpz_class& k, const BiPoly& f, const mpz_class& m) const {
    if (k < 0) throw Error(Errc::InvalidArgument, "negative bivariate exponent");
    BiPoly r = constant(1).mod(m), b = rem_z(f).mod(m);
    mpz_class e = k;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = (r * b).rem_z(f).mod(m);
        e >>= 1;
        if (e > 0) b = (b * b).rem_z(f).mod(m);
    }
    return r;
}

IntPoly BiPoly::at(const mpz_class& t) const {
    std::vector<mpz_class> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i].eval(t);
    return IntPoly(std::move(v));
}

std::string BiPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = c_.size(); j-- > 0;) {
        if (c_[j].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[j].str('y') << ")";
        if (j >= 1) os << "*z";
        if (j >= 2) os << "^" << j;
    }
    return os.str();
}

}  // namespace leo::nt
