#include "leo/order.hpp"

#include "leo/error.hpp"
#include "leo/factor.hpp"
#include "leo/qmatrix.hpp"

namespace leo::nt {

MonogenicOrder::MonogenicOrder(IntPoly f) : f_(std::move(f)) {
    if (!f_.is_monic() || f_.degree() < 1) throw Error(Errc::InvalidArgument, "order polynomial must be monic");
    if (!irreducible_over_q(f_)) throw Error(Errc::ReducibleSpecialization, "polynomial " + f_.str() + " is reducible");
    disc_ = nt::discriminant(f_);
}

OrderElem::OrderElem(std::shared_ptr<const MonogenicOrder> order, std::vector<mpz_class> coords)
    : o_(std::move(order)), c_(std::move(coords)) {
    if (static_cast<int>(c_.size()) != o_->degree())
        throw Error(Errc::InvalidArgument, "coordinate vector has the wrong length");
}

OrderElem OrderElem::from_poly(std::shared_ptr<const MonogenicOrder> order, const IntPoly& p) {
    IntPoly r = p.rem_monic(order->poly());
    std::vector<mpz_class> c(order->degree());
    for (int i = 0; i < order->degree(); ++i) c[i] = r.coeff(i);
    return OrderElem(std::move(order), std::move(c));
}

OrderElem OrderElem::one(std::shared_ptr<const MonogenicOrder> order) {
    return from_poly(std::move(order), IntPoly::constant(1));
}

OrderElem OrderElem::gen(std::shared_ptr<const MonogenicOrder> order) {
    return from_poly(std::move(order), IntPoly::x());
}

OrderElem OrderElem::operator+(const OrderElem& b) const {
    OrderElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
}

OrderElem OrderElem::operator-(const OrderElem& b) const {
    OrderElem r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
}

OrderElem OrderElem::operator*(const OrderElem& b) const {
    return from_poly(o_, as_poly() * b.as_poly());
}

bool OrderElem::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

OrderElem OrderElem::reduced(const mpz_class& m) const {
    OrderElem r = *this;
    for (auto& x : r.c_) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool OrderElem::congruent_one(const mpz_class& m) const {
    OrderElem r = *this;
    r.c_[0] -= 1;
    for (const auto& x : r.c_)
        if (!mpz_divisible_p(x.get_mpz_t(), m.get_mpz_t())) return false;
    return true;
}

mpz_class OrderElem::norm() const { return resultant(o_->poly(), as_poly()); }

OrderElem OrderElem::inverse() const {
    mpz_class nm = norm();
    if (nm != 1 && nm != -1) throw Error(Errc::NotAUnit, "element " + str() + " has norm " + nm.get_str());
    // Column j of the multiplication matrix is this * x^j; solve M y = e_0.
    int n = o_->degree();
    QMatrix m(n, n + 1);
    OrderElem xj = one(o_);
    OrderElem x = gen(o_);
    for (int j = 0; j < n; ++j) {
        OrderElem col = *this * xj;
        for (int i = 0; i < n; ++i) m(i, j) = col.c_[i];
        xj = xj * x;
    }
    m(0, n) = 1;
    std::vector<std::size_t> piv;
    QMatrix r = m.rref(&piv);
    std::vector<mpz_class> y(n);
    for (int i = 0; i < n; ++i) {
        const mpq_class& v = r(i, n);
        if (v.get_den() != 1) throw Error(Errc::NotAUnit, "inverse is not integral");
        y[i] = v.get_num();
    }
    return OrderElem(o_, std::move(y));
}

OrderElem OrderElem::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(-e);
    OrderElem r = one(o_), b = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = r * b;
        k >>= 1;
        if (k > 0) b = b * b;
    }
    return r;
}

OrderElem OrderElem::pow_mod(const mpz_class& e, const mpz_class& m) const {
    if (m <= 0) throw Error(Errc::InvalidArgument, "modulus must be positive");
    if (e < 0) return inverse().pow_mod(-e, m);
    OrderElem r = one(o_).reduced(m), b = reduced(m);
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = (r * b).reduced(m);
        k >>= 1;
        if (k > 0) b = (b * b).reduced(m);
    }
    return r;
}

std::string OrderElem::str() const { return as_poly().str('L'); }

bool is_unit(const OrderElem& u) {
    mpz_class n = u.norm();
    return n == 1 || n == -1;
}

}  // namespace leo::nt
