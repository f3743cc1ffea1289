#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include "kq/errors.hpp"
#include "kq/gf.hpp"
#include "kq/rational.hpp"

namespace kq {

// Zero test and pivot selection differ between exact fields and doubles:
// doubles use the |x| <= 1e-9 threshold fixed for numeric-mode rank decisions.
template <class F>
struct FieldTraits {
    static bool is_zero(const F& x) { return x == F(0); }
    static double pivot_size(const F&) { return 1.0; }
};

template <>
struct FieldTraits<double> {
    static constexpr double kTol = 1e-9;
    static bool is_zero(double x) { return std::fabs(x) <= kTol; }
    static double pivot_size(double x) { return std::fabs(x); }
};

template <class F>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<F> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, F(0)) {}

    F& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const F& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (!FieldTraits<F>::is_zero(x)) return false;
        return true;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        assert(x.rows == y.rows && x.cols == y.cols);
        Mat z(x.rows, x.cols);
        for (size_t k = 0; k < x.a.size(); ++k) z.a[k] = x.a[k] + y.a[k];
        return z;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        assert(x.rows == y.rows && x.cols == y.cols);
        Mat z(x.rows, x.cols);
        for (size_t k = 0; k < x.a.size(); ++k) z.a[k] = x.a[k] - y.a[k];
        return z;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols != y.rows) throw ShapeMismatch("matrix product shape mismatch");
        Mat z(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const F& xv = x(i, k);
                if (xv == F(0)) continue;
                for (int j = 0; j < y.cols; ++j) z(i, j) += xv * y(k, j);
            }
        return z;
    }
    friend Mat operator*(const F& s, const Mat& x) {
        Mat z(x.rows, x.cols);
        for (size_t k = 0; k < x.a.size(); ++k) z.a[k] = s * x.a[k];
        return z;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    Mat transposed() const {
        Mat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<F> row(int i) const {
        return std::vector<F>(a.begin() + static_cast<size_t>(i) * cols,
                              a.begin() + static_cast<size_t>(i + 1) * cols);
    }

    std::vector<F> apply(const std::vector<F>& v) const {
        assert(static_cast<int>(v.size()) == cols);
        std::vector<F> out(rows, F(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!(v[j] == F(0))) out[i] += (*this)(i, j) * v[j];
        return out;
    }
};

// In-place reduced row echelon form. Returns pivot column indices.
template <class F>
std::vector<int> rref(Mat<F>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int best = -1;
        double best_size = 0.0;
        for (int i = row; i < m.rows; ++i) {
            if (!FieldTraits<F>::is_zero(m(i, col))) {
                double s = FieldTraits<F>::pivot_size(m(i, col));
                if (best < 0 || s > best_size) { best = i; best_size = s; }
            }
        }
        if (best < 0) continue;
        if (best != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m(row, j), m(best, j));
        F inv = F(1) / m(row, col);
        for (int j = 0; j < m.cols; ++j) m(row, j) = m(row, j) * inv;
        m(row, col) = F(1);
        for (int i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            F f = m(i, col);
            if (FieldTraits<F>::is_zero(f)) { m(i, col) = F(0); continue; }
            for (int j = 0; j < m.cols; ++j) m(i, j) = m(i, j) - f * m(row, j);
            m(i, col) = F(0);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
int rank(Mat<F> m) {
    return static_cast<int>(rref(m).size());
}

// Basis of the right kernel {x : m x = 0}, one row per basis vector.
template <class F>
Mat<F> kernel_basis(Mat<F> m) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int p : pivots) is_pivot[p] = true;
    int k = m.cols - static_cast<int>(pivots.size());
    Mat<F> ker(k, m.cols);
    int kr = 0;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        ker(kr, free) = F(1);
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            ker(kr, pivots[pi]) = -m(static_cast<int>(pi), free);
        ++kr;
    }
    return ker;
}

// Exact inverse; throws SingularMatrix when rank-deficient.
template <class F>
Mat<F> inverse(const Mat<F>& m) {
    if (m.rows != m.cols) throw SingularMatrix("inverse of non-square matrix");
    int n = m.rows;
    Mat<F> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = F(1);
    }
    std::vector<int> piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1)
        throw SingularMatrix("matrix is singular");
    Mat<F> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// Incrementally built row space with reduced echelon rows; the basic tool for
// submodule closures and span comparisons.
template <class F>
class SpanBasis {
public:
    explicit SpanBasis(int ambient) : ambient_(ambient) {}

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    // Reduce v against the basis; returns the residual.
    std::vector<F> reduce(std::vector<F> v) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            const F& c = v[pivot_[i]];
            if (FieldTraits<F>::is_zero(c)) continue;
            F f = c;
            for (int j = 0; j < ambient_; ++j) v[j] = v[j] - f * rows_[i][j];
            v[pivot_[i]] = F(0);
        }
        return v;
    }

    bool contains(const std::vector<F>& v) const {
        std::vector<F> r = reduce(v);
        for (const auto& x : r)
            if (!FieldTraits<F>::is_zero(x)) return false;
        return true;
    }

    // Insert v; returns true when the span grew.
    bool insert(std::vector<F> v) {
        v = reduce(std::move(v));
        int p = -1;
        double best = 0.0;
        for (int j = 0; j < ambient_; ++j) {
            if (!FieldTraits<F>::is_zero(v[j])) {
                double s = FieldTraits<F>::pivot_size(v[j]);
                if (p < 0 || s > best) { p = j; best = s; }
            }
        }
        if (p < 0) return false;
        F inv = F(1) / v[p];
        for (int j = 0; j < ambient_; ++j) v[j] = v[j] * inv;
        v[p] = F(1);
        // keep existing rows reduced against the new one
        for (size_t i = 0; i < rows_.size(); ++i) {
            F f = rows_[i][p];
            if (FieldTraits<F>::is_zero(f)) continue;
            for (int j = 0; j < ambient_; ++j) rows_[i][j] = rows_[i][j] - f * v[j];
            rows_[i][p] = F(0);
        }
        rows_.push_back(std::move(v));
        pivot_.push_back(p);
        return true;
    }

    Mat<F> basis_matrix() const {
        Mat<F> b(dim(), ambient_);
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < ambient_; ++j) b(i, j) = rows_[i][j];
        return b;
    }

    const std::vector<std::vector<F>>& rows() const { return rows_; }

    // Coordinates of v in this basis; v must lie in the span.
    std::vector<F> coordinates(const std::vector<F>& v) const {
        std::vector<F> coef(rows_.size(), F(0));
        std::vector<F> w = v;
        for (size_t i = 0; i < rows_.size(); ++i) {
            F c = w[pivot_[i]];
            coef[i] = c;
            if (FieldTraits<F>::is_zero(c)) continue;
            for (int j = 0; j < ambient_; ++j) w[j] = w[j] - c * rows_[i][j];
        }
        return coef;
    }

private:
    int ambient_;
    std::vector<std::vector<F>> rows_;
    std::vector<int> pivot_;
};

// Preimage {x : m x in span(rows of w)}, returned as a row basis.
template <class F>
Mat<F> preimage(const Mat<F>& m, const SpanBasis<F>& w) {
    // kernel of (reduce-by-w) o m
    Mat<F> red(m.rows, m.cols);
    for (int j = 0; j < m.cols; ++j) {
        std::vector<F> col(m.rows);
        for (int i = 0; i < m.rows; ++i) col[i] = m(i, j);
        std::vector<F> r = w.reduce(col);
        for (int i = 0; i < m.rows; ++i) red(i, j) = r[i];
    }
    return kernel_basis(red);
}

} // namespace kq
