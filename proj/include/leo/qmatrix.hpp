#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace leo {

using QVector = std::vector<mpq_class>;

// Dense exact rational matrix.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    mpq_class& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const mpq_class& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix scaled(const mpq_class& s) const;
    void add_scaled(const QMatrix& o, const mpq_class& s);
    bool operator==(const QMatrix& o) const;
    bool is_zero() const;
    QMatrix transpose() const;

    // Reduced row echelon form; pivot columns written to *pivots when given.
    QMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
    std::size_t rank() const;
    // Basis of {x : A x = 0} in reduced form.
    std::vector<QVector> nullspace() const;
    // Basis of {y : y^T A = 0} in reduced echelon form.
    std::vector<QVector> left_nullspace() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<mpq_class> a_;
};

// True when v lies in the row span of the given basis.
bool in_span(const std::vector<QVector>& basis, const QVector& v);

std::string to_string(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

}  // namespace leo
