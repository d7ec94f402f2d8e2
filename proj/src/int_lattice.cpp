#include "leo/int_lattice.hpp"

#include <algorithm>

#include "leo/error.hpp"

namespace leo::nt {

namespace {

void axpy(IntVec& y, const mpz_class& a, const IntVec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
}

}  // namespace

IntLattice IntLattice::from_generators(const std::vector<IntVec>& gens, std::size_t dim) {
    std::vector<IntVec> m;
    for (const auto& g : gens) {
        if (g.size() != dim) throw Error(Errc::InvalidArgument, "generator has the wrong dimension");
        if (!is_zero(g)) m.push_back(g);
    }
    std::size_t row = 0;
    for (std::size_t col = 0; col < dim && row < m.size(); ++col) {
        // Euclid on column col among rows >= row.
        for (;;) {
            std::size_t best = m.size();
            for (std::size_t i = row; i < m.size(); ++i)
                if (m[i][col] != 0 && (best == m.size() || abs(m[i][col]) < abs(m[best][col]))) best = i;
            if (best == m.size()) break;
            std::swap(m[row], m[best]);
            bool done = true;
            for (std::size_t i = row + 1; i < m.size(); ++i) {
                if (m[i][col] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[row][col].get_mpz_t());
                axpy(m[i], -q, m[row]);
                if (m[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (m[row][col] == 0) continue;
        if (m[row][col] < 0)
            for (auto& x : m[row]) x = -x;
        for (std::size_t i = 0; i < row; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[row][col].get_mpz_t());
            axpy(m[i], -q, m[row]);
        }
        ++row;
    }
    m.resize(row);
    IntLattice l;
    l.dim_ = dim;
    l.rows_ = std::move(m);
    return l;
}

IntLattice IntLattice::full(std::size_t dim) {
    std::vector<IntVec> id(dim, IntVec(dim));
    for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
    return from_generators(id, dim);
}

bool IntLattice::contains(const IntVec& v0) const {
    if (v0.size() != dim_) return false;
    IntVec v = v0;
    std::size_t col = 0;
    for (const auto& r : rows_) {
        while (r[col] == 0) {
            if (v[col] != 0) return false;
            ++col;
        }
        if (!mpz_divisible_p(v[col].get_mpz_t(), r[col].get_mpz_t())) return false;
        mpz_class q = v[col] / r[col];
        axpy(v, -q, r);
        ++col;
    }
    return is_zero(v);
}

bool IntLattice::subset_of(const IntLattice& other) const {
    return std::all_of(rows_.begin(), rows_.end(), [&](const IntVec& r) { return other.contains(r); });
}

IntLattice IntLattice::scaled(const mpz_class& k) const {
    std::vector<IntVec> g = rows_;
    for (auto& r : g)
        for (auto& x : r) x *= k;
    return from_generators(g, dim_);
}

IntLattice IntLattice::operator+(const IntLattice& o) const {
    std::vector<IntVec> g = rows_;
    g.insert(g.end(), o.rows_.begin(), o.rows_.end());
    return from_generators(g, dim_);
}

mpz_class IntLattice::determinant() const {
    mpz_class d = 1;
    std::size_t col = 0;
    for (const auto& r : rows_) {
        while (r[col] == 0) ++col;
        d *= r[col];
    }
    return d;
}

mpz_class IntLattice::index_of(const IntLattice& sub) const {
    if (rank() != dim_ || sub.rank() != dim_) throw Error(Errc::InvalidArgument, "index needs full-rank lattices");
    if (!sub.subset_of(*this)) throw Error(Errc::InvalidArgument, "not a sublattice");
    return sub.determinant() / determinant();
}

std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> m, std::uint64_t p) {
    std::size_t rank = 0;
    std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] % p == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        mpz_class inv_z, a(static_cast<unsigned long>(m[rank][c] % p)), pz(static_cast<unsigned long>(p));
        mpz_invert(inv_z.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t());
        std::uint64_t inv = inv_z.get_ui();
        for (auto& x : m[rank]) x = (x % p) * inv % p;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][c] % p == 0) continue;
            std::uint64_t f = m[i][c] % p;
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] % p + p - f * m[rank][j] % p) % p;
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<std::uint64_t>> left_kernel_mod_p(const std::vector<std::vector<std::uint64_t>>& m,
                                                          std::uint64_t p) {
    // Row-reduce [m | I]; rows whose m-part vanishes give the kernel.
    std::size_t r = m.size(), c = r ? m[0].size() : 0;
    std::vector<std::vector<std::uint64_t>> a(r, std::vector<std::uint64_t>(c + r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) a[i][j] = m[i][j] % p;
        a[i][c + i] = 1;
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
        std::size_t piv = rank;
        while (piv < r && a[piv][col] == 0) ++piv;
        if (piv == r) continue;
        std::swap(a[piv], a[rank]);
        mpz_class inv_z, av(static_cast<unsigned long>(a[rank][col])), pz(static_cast<unsigned long>(p));
        mpz_invert(inv_z.get_mpz_t(), av.get_mpz_t(), pz.get_mpz_t());
        std::uint64_t inv = inv_z.get_ui();
        for (auto& x : a[rank]) x = x * inv % p;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            std::uint64_t f = a[i][col];
            for (std::size_t j = 0; j < c + r; ++j) a[i][j] = (a[i][j] + p - f * a[rank][j] % p) % p;
        }
        ++rank;
    }
    std::vector<std::vector<std::uint64_t>> ker;
    for (std::size_t i = rank; i < r; ++i) ker.emplace_back(a[i].begin() + c, a[i].end());
    return ker;
}

}  // namespace leo::nt
