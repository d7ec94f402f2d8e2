#include "leo/qmatrix.hpp"

#include "leo/error.hpp"

namespace leo {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
    QMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(Errc::InvalidArgument, "ragged rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (c_ != o.r_) throw Error(Errc::InvalidArgument, "matrix shape mismatch");
    QMatrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const mpq_class& x = (*this)(i, k);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j)
                if (sgn(o(k, j)) != 0) m(i, j) += x * o(k, j);
        }
    return m;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    QMatrix m = *this;
    m.add_scaled(o, 1);
    return m;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    QMatrix m = *this;
    m.add_scaled(o, -1);
    return m;
}

QMatrix QMatrix::scaled(const mpq_class& s) const {
    QMatrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
}

void QMatrix::add_scaled(const QMatrix& o, const mpq_class& s) {
    if (r_ != o.r_ || c_ != o.c_) throw Error(Errc::InvalidArgument, "matrix shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (sgn(o.a_[i]) != 0) a_[i] += s * o.a_[i];
}

bool QMatrix::operator==(const QMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

bool QMatrix::is_zero() const {
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

QMatrix QMatrix::transpose() const {
    QMatrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

QMatrix QMatrix::rref(std::vector<std::size_t>* pivots) const {
    QMatrix m = *this;
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c_ && row < r_; ++col) {
        std::size_t p = row;
        while (p < r_ && sgn(m(p, col)) == 0) ++p;
        if (p == r_) continue;
        if (p != row)
            for (std::size_t j = 0; j < c_; ++j) std::swap(m(p, j), m(row, j));
        mpq_class inv = 1 / m(row, col);
        for (std::size_t j = col; j < c_; ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < r_; ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            mpq_class f = m(i, col);
            for (std::size_t j = col; j < c_; ++j)
                if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    if (pivots) *pivots = piv;
    return m;
}

std::size_t QMatrix::rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
}

std::vector<QVector> QMatrix::nullspace() const {
    std::vector<std::size_t> piv;
    QMatrix m = rref(&piv);
    std::vector<bool> is_piv(c_, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < c_; ++free) {
        if (is_piv[free]) continue;
        QVector v(c_);
        v[free] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, free);
        basis.push_back(std::move(v));
    }
    // present the basis in reduced echelon form
    if (basis.empty()) return basis;
    QMatrix b = from_rows(basis, c_).rref();
    std::vector<QVector> out;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        QVector v(c_);
        bool nz = false;
        for (std::size_t j = 0; j < c_; ++j) {
            v[j] = b(i, j);
            if (sgn(v[j]) != 0) nz = true;
        }
        if (nz) out.push_back(std::move(v));
    }
    return out;
}

std::vector<QVector> QMatrix::left_nullspace() const { return transpose().nullspace(); }

bool in_span(const std::vector<QVector>& basis, const QVector& v) {
    if (basis.empty()) {
        for (const auto& x : v)
            if (sgn(x) != 0) return false;
        return true;
    }
    QMatrix a = QMatrix::from_rows(basis, v.size());
    auto rows = basis;
    rows.push_back(v);
    return QMatrix::from_rows(rows, v.size()).rank() == a.rank();
}

std::string to_string(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    return c.get_str();
}

mpq_class parse_rational(const std::string& s) {
    try {
        mpq_class q(s, 10);
        if (sgn(q.get_den()) == 0) throw Error(Errc::ParseError, "zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error(Errc::ParseError, "bad rational '" + s + "'");
    }
}

}  // namespace leo
