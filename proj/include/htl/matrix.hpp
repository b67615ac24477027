#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "htl/poly.hpp"
#include "htl/rational.hpp"

namespace htl {

/// Dense rows x cols matrix over any value type with ring-like operators.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, const T& fill) : rows_(rows), cols_(cols), d_(static_cast<size_t>(rows) * cols, fill) {}
    template <typename U = T, typename = std::enable_if_t<std::is_default_constructible_v<U>>>
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), d_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& at(int i, int j) { return d_[static_cast<size_t>(i) * cols_ + j]; }
    const T& at(int i, int j) const { return d_[static_cast<size_t>(i) * cols_ + j]; }

    template <typename F>
    auto map(F f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
        using R = decltype(f(std::declval<const T&>()));
        Matrix<R> out(rows_, cols_, f(d_[0]));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.at(i, j) = f(at(i, j));
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix shape mismatch");
        Matrix r = a;
        for (size_t i = 0; i < r.d_.size(); ++i) r.d_[i] = r.d_[i] + b.d_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix shape mismatch");
        Matrix r = a;
        for (size_t i = 0; i < r.d_.size(); ++i) r.d_[i] = r.d_[i] - b.d_[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.d_) x = -x;
        return r;
    }

    template <typename U>
    friend auto operator*(const Matrix& a, const Matrix<U>& b) -> Matrix<decltype(std::declval<const T&>() * std::declval<const U&>())> {
        using R = decltype(std::declval<const T&>() * std::declval<const U&>());
        if (a.cols() != b.rows()) throw PreconditionError("matrix shape mismatch");
        Matrix<R> out(a.rows(), b.cols(), a.at(0, 0) * b.at(0, 0));
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) {
                R acc = a.at(i, 0) * b.at(0, j);
                for (int k = 1; k < a.cols(); ++k) acc = acc + a.at(i, k) * b.at(k, j);
                out.at(i, j) = acc;
            }
        return out;
    }

    template <typename S>
    Matrix scaled(const S& s) const {
        Matrix r = *this;
        for (auto& x : r.d_) x = s * x;
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    T trace() const {
        T acc = at(0, 0);
        for (int i = 1; i < rows_; ++i) acc = acc + at(i, i);
        return acc;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_, d_[0]);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

private:
    int rows_, cols_;
    std::vector<T> d_;
};

using ScalarMatrix = Matrix<GaussianRational>;

inline ScalarMatrix scalar_identity(int n) {
    ScalarMatrix m(n, n, GaussianRational(0));
    for (int i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
    return m;
}

inline ScalarMatrix scalar_zero(int rows, int cols) { return {rows, cols, GaussianRational(0)}; }

inline bool is_zero(const ScalarMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) return false;
    return true;
}

inline ScalarMatrix diagonal_matrix(const std::vector<GaussianRational>& d) {
    ScalarMatrix m = scalar_zero(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

inline ScalarMatrix permutation_matrix(const std::vector<int>& dest_of) {
    // e_j -> e_{dest_of[j]}
    int n = static_cast<int>(dest_of.size());
    ScalarMatrix p = scalar_zero(n, n);
    for (int j = 0; j < n; ++j) p.at(dest_of[static_cast<size_t>(j)], j) = GaussianRational(1);
    return p;
}

/// Row echelon over Q(i); returns rank, optionally keeps the reduced rows.
inline int scalar_rank(ScalarMatrix m) {
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows(); ++r)
            if (!m.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        GaussianRational inv = m.at(rank, col).inverse();
        for (int j = col; j < m.cols(); ++j) m.at(rank, j) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == rank || m.at(r, col).is_zero()) continue;
            GaussianRational f = m.at(r, col);
            for (int j = col; j < m.cols(); ++j) m.at(r, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

inline ScalarMatrix scalar_inverse(const ScalarMatrix& a) {
    if (!a.is_square()) throw PreconditionError("inverse of non-square matrix");
    int n = a.rows();
    ScalarMatrix m = a;
    ScalarMatrix inv = scalar_identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!m.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw PreconditionError("singular matrix");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(pivot, j), m.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        GaussianRational s = m.at(col, col).inverse();
        for (int j = 0; j < n; ++j) {
            m.at(col, j) *= s;
            inv.at(col, j) *= s;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || m.at(r, col).is_zero()) continue;
            GaussianRational f = m.at(r, col);
            for (int j = 0; j < n; ++j) {
                m.at(r, j) -= f * m.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

/// Basis of the kernel, one column vector per basis element.
inline std::vector<std::vector<GaussianRational>> scalar_kernel(ScalarMatrix m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!m.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        GaussianRational inv = m.at(rank, col).inverse();
        for (int j = col; j < cols; ++j) m.at(rank, j) *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m.at(r, col).is_zero()) continue;
            GaussianRational f = m.at(r, col);
            for (int j = col; j < cols; ++j) m.at(r, j) -= f * m.at(rank, j);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<GaussianRational>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        std::vector<GaussianRational> v(static_cast<size_t>(cols), GaussianRational(0));
        v[static_cast<size_t>(free)] = GaussianRational(1);
        for (int r = 0; r < rank; ++r) v[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline ScalarMatrix matrix_power(const ScalarMatrix& a, int p) {
    ScalarMatrix acc = scalar_identity(a.rows());
    for (int i = 0; i < p; ++i) acc = acc * a;
    return acc;
}

/// Characteristic polynomial det(tI - A) by the Faddeev-LeVerrier recursion.
inline Poly characteristic_polynomial(const ScalarMatrix& a) {
    int n = a.rows();
    std::vector<GaussianRational> c(static_cast<size_t>(n) + 1);
    c[static_cast<size_t>(n)] = GaussianRational(1);
    ScalarMatrix m = scalar_zero(n, n);
    for (int k = 1; k <= n; ++k) {
        ScalarMatrix shifted = m;
        for (int i = 0; i < n; ++i) shifted.at(i, i) += c[static_cast<size_t>(n - k + 1)];
        m = a * shifted;
        GaussianRational tr = m.trace();
        c[static_cast<size_t>(n - k)] = -(tr / GaussianRational(static_cast<long>(k)));
    }
    return Poly(std::move(c));
}

}  // namespace htl
