#pragma once

#include <cassert>
#include <optional>
#include <vector>

namespace strata {

/// Dense matrix over an exact field. The field context is passed to every
/// operation that needs arithmetic.
template <class F>
class Matrix {
public:
    using Elem = typename F::Elem;

    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, Elem fill = Elem{})
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Matrix identity(int n, const F& k) {
        Matrix m(n, n, k.zero());
        for (int i = 0; i < n; ++i) m.at(i, i) = k.one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Elem& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Elem& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    void set_column(int j, const std::vector<Elem>& v) {
        for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
    }
    std::vector<Elem> column(int j) const {
        std::vector<Elem> v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }
    std::vector<Elem> row(int i) const {
        std::vector<Elem> v(cols_);
        for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
        return v;
    }

    bool operator==(const Matrix&) const = default;

private:
    int rows_, cols_;
    std::vector<Elem> a_;
};

template <class F>
Matrix<F> mat_mul(const F& k, const Matrix<F>& a, const Matrix<F>& b) {
    assert(a.cols() == b.rows());
    Matrix<F> c(a.rows(), b.cols(), k.zero());
    for (int i = 0; i < a.rows(); ++i)
        for (int l = 0; l < a.cols(); ++l) {
            if (k.is_zero(a.at(i, l))) continue;
            for (int j = 0; j < b.cols(); ++j)
                c.at(i, j) = k.add(c.at(i, j), k.mul(a.at(i, l), b.at(l, j)));
        }
    return c;
}

template <class F>
std::vector<typename F::Elem> mat_vec(const F& k, const Matrix<F>& a,
                                      const std::vector<typename F::Elem>& v) {
    assert(static_cast<int>(v.size()) == a.cols());
    std::vector<typename F::Elem> r(a.rows(), k.zero());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!k.is_zero(a.at(i, j))) r[i] = k.add(r[i], k.mul(a.at(i, j), v[j]));
    return r;
}

/// In-place reduced row echelon form; returns the pivot columns.
template <class F>
std::vector<int> rref(const F& k, Matrix<F>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!k.is_zero(m.at(i, c))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        auto s = k.inv(m.at(r, c));
        for (int j = c; j < m.cols(); ++j) m.at(r, j) = k.mul(m.at(r, j), s);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || k.is_zero(m.at(i, c))) continue;
            auto f = m.at(i, c);
            for (int j = c; j < m.cols(); ++j)
                m.at(i, j) = k.sub(m.at(i, j), k.mul(f, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
int rank(const F& k, Matrix<F> m) {
    return static_cast<int>(rref(k, m).size());
}

/// Basis of the right kernel {v : Mv = 0}.
template <class F>
std::vector<std::vector<typename F::Elem>> kernel_basis(const F& k, Matrix<F> m) {
    auto pivots = rref(k, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<typename F::Elem>> basis;
    for (int fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<typename F::Elem> v(m.cols(), k.zero());
        v[fc] = k.one();
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = k.neg(m.at(static_cast<int>(r), fc));
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
std::vector<std::vector<typename F::Elem>> left_kernel_basis(const F& k, const Matrix<F>& m) {
    return kernel_basis(k, m.transposed());
}

/// Solves Mx = b; nullopt when inconsistent. Free variables are set to zero.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const F& k, const Matrix<F>& m,
                                                   const std::vector<typename F::Elem>& b) {
    Matrix<F> aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    auto pivots = rref(k, aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<typename F::Elem> x(m.cols(), k.zero());
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), m.cols());
    return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const F& k, const Matrix<F>& m) {
    assert(m.rows() == m.cols());
    int n = m.rows();
    Matrix<F> aug(n, 2 * n, k.zero());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = k.one();
    }
    auto pivots = rref(k, aug);
    if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix<F> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

template <class F>
typename F::Elem scalar_det(const F& k, Matrix<F> m) {
    assert(m.rows() == m.cols());
    int n = m.rows();
    auto det = k.one();
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!k.is_zero(m.at(i, c))) { piv = i; break; }
        if (piv < 0) return k.zero();
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
            det = k.neg(det);
        }
        det = k.mul(det, m.at(c, c));
        auto s = k.inv(m.at(c, c));
        for (int i = c + 1; i < n; ++i) {
            if (k.is_zero(m.at(i, c))) continue;
            auto f = k.mul(m.at(i, c), s);
            for (int j = c; j < n; ++j)
                m.at(i, j) = k.sub(m.at(i, j), k.mul(f, m.at(c, j)));
        }
    }
    return det;
}

/// Builds a matrix whose rows are the given vectors.
template <class F>
Matrix<F> matrix_from_rows(const F& k, const std::vector<std::vector<typename F::Elem>>& rows,
                           int cols) {
    Matrix<F> m(static_cast<int>(rows.size()), cols, k.zero());
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    return m;
}

/// Extends `vecs` (assumed independent) to a basis of F^n with standard
/// vectors; returns the full n x n invertible matrix whose first columns
/// are `vecs`.
template <class F>
Matrix<F> complete_to_basis(const F& k, const std::vector<std::vector<typename F::Elem>>& vecs,
                            int n) {
    std::vector<std::vector<typename F::Elem>> cols = vecs;
    for (int e = 0; e < n && static_cast<int>(cols.size()) < n; ++e) {
        std::vector<typename F::Elem> cand(n, k.zero());
        cand[e] = k.one();
        auto trial = cols;
        trial.push_back(cand);
        Matrix<F> m(n, static_cast<int>(trial.size()));
        for (size_t j = 0; j < trial.size(); ++j) m.set_column(static_cast<int>(j), trial[j]);
        if (rank(k, m) == static_cast<int>(trial.size())) cols.push_back(cand);
    }
    Matrix<F> m(n, n);
    for (size_t j = 0; j < cols.size(); ++j) m.set_column(static_cast<int>(j), cols[j]);
    return m;
}

} // namespace strata
