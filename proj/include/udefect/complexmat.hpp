#pragma once

/**
 * @brief Dense complex matrices and tolerance-based elimination.
 *
 * Carrier type for numeric unitaries and for the N^2 x N^2 operator
 * matrices built elsewhere, plus the pivoted elimination used to obtain
 * numerical ranks and kernel bases.
 */

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace udefect {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }
    const cplx& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    ComplexMatrix conj() const {
        ComplexMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
        return r;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    /// Smallest entry magnitude (used by the zero-free admission test).
    double min_abs() const {
        double m = a_.empty() ? 0.0 : std::abs(a_[0]);
        for (const cplx& z : a_) m = std::min(m, std::abs(z));
        return m;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        ComplexMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend ComplexMatrix operator*(const cplx& s, const ComplexMatrix& a) {
        ComplexMatrix r = a;
        for (cplx& z : r.a_) z *= s;
        return r;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix sum: shape mismatch");
        ComplexMatrix r = a;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
        return r;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix difference: shape mismatch");
        ComplexMatrix r = a;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= b.a_[k];
        return r;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> a_;
};

/// Entrywise (Hadamard) product.
inline ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hadamard: shape mismatch");
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * b(i, j);
    return r;
}

/// Kronecker product with row-major block layout: (A kron B)(ia*nB+ib, ja*mB+jb).
inline ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cplx s = a(ia, ja);
            if (s == cplx{0.0, 0.0}) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    r(ia * b.rows() + ib, ja * b.cols() + jb) = s * b(ib, jb);
        }
    return r;
}

/// Result of a tolerance-based elimination run.
struct EliminationResult {
    std::size_t rank = 0;
    /// Magnitudes (residual column norms) of accepted pivots, in pivot order.
    std::vector<double> pivot_magnitudes;
    /// Columns chosen as pivots, in pivot order.
    std::vector<std::size_t> pivot_columns;
    /// Largest rejected residual column norm (0 when everything was consumed).
    double largest_rejected = 0.0;
    /// Threshold actually applied: tol * max initial column norm.
    double threshold = 0.0;
    /// Basis of the (right) kernel, one vector per column of the input's width.
    std::vector<std::vector<cplx>> kernel;
    /// Set when accepted/rejected pivot magnitudes crowd the threshold.
    bool pivot_gap_warning = false;
};

/**
 * @brief Column-pivoted elimination with a relative tolerance.
 *
 * At each step the remaining column with the largest residual norm is chosen
 * as the pivot column; columns whose residual norm falls at or below
 * tol * (max initial column norm) are treated as dependent.  The routine is
 * deterministic for fixed input and also produces a kernel basis by
 * back-substitution over the dependent columns.
 */
inline EliminationResult eliminate_with_tol(ComplexMatrix m, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("eliminate_with_tol: tol must be positive");
    const std::size_t rows = m.rows(), cols = m.cols();

    EliminationResult res;
    double max_col_norm = 0.0;
    std::vector<double> col_norm_sq(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += std::norm(m(i, j));
        col_norm_sq[j] = s;
        max_col_norm = std::max(max_col_norm, std::sqrt(s));
    }
    res.threshold = tol * max_col_norm;

    std::vector<std::size_t> pivot_cols;
    std::vector<std::size_t> pivot_rows;
    std::vector<bool> row_used(rows, false), col_used(cols, false);

    for (;;) {
        // Select the unconsumed column with the largest residual norm.
        std::size_t best = cols;
        double best_norm = -1.0;
        for (std::size_t j = 0; j < cols; ++j) {
            if (col_used[j]) continue;
            double s = 0.0;
            for (std::size_t i = 0; i < rows; ++i)
                if (!row_used[i]) s += std::norm(m(i, j));
            col_norm_sq[j] = s;
            const double n = std::sqrt(s);
            if (n > best_norm) { best_norm = n; best = j; }
        }
        if (best == cols) break;
        if (best_norm <= res.threshold) {
            res.largest_rejected = best_norm;
            break;
        }

        // Pick the largest entry in that column among unused rows.
        std::size_t prow = rows;
        double prow_abs = -1.0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (row_used[i]) continue;
            const double a = std::abs(m(i, best));
            if (a > prow_abs) { prow_abs = a; prow = i; }
        }
        if (prow == rows || prow_abs == 0.0) {
            res.largest_rejected = best_norm;
            break;
        }

        // Gauss-Jordan step: clear the pivot column in every other row.
        const cplx p = m(prow, best);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == prow) continue;
            const cplx f = m(i, best) / p;
            if (f == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(prow, j);
            m(i, best) = 0.0;
        }

        row_used[prow] = true;
        col_used[best] = true;
        pivot_cols.push_back(best);
        pivot_rows.push_back(prow);
        res.pivot_columns.push_back(best);
        res.pivot_magnitudes.push_back(best_norm);
        ++res.rank;
    }

    // Kernel basis: one vector per non-pivot column.
    for (std::size_t f = 0; f < cols; ++f) {
        if (col_used[f]) continue;
        std::vector<cplx> v(cols, cplx{0.0, 0.0});
        v[f] = 1.0;
        for (std::size_t k = 0; k < pivot_cols.size(); ++k)
            v[pivot_cols[k]] = -m(pivot_rows[k], f) / m(pivot_rows[k], pivot_cols[k]);
        res.kernel.push_back(std::move(v));
    }

    // Diagnostics: the decision is shaky when the smallest accepted pivot and
    // the largest rejected one sit within a couple of decades of each other,
    // or when an accepted pivot hugs the threshold.
    if (!res.pivot_magnitudes.empty()) {
        const double smallest = *std::min_element(res.pivot_magnitudes.begin(),
                                                  res.pivot_magnitudes.end());
        if (res.largest_rejected > 0.0 && smallest / res.largest_rejected < 1e3)
            res.pivot_gap_warning = true;
        if (res.threshold > 0.0 && smallest < 100.0 * res.threshold)
            res.pivot_gap_warning = true;
    }
    return res;
}

/// Number of pivots above tol * (max initial column norm); see eliminate_with_tol.
inline std::size_t rank_with_tol(const ComplexMatrix& m, double tol) {
    return eliminate_with_tol(m, tol).rank;
}

/// Matrix inverse by Gauss-Jordan with partial pivoting; throws when singular.
inline ComplexMatrix inverse(ComplexMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t prow = col;
        double best = std::abs(m(col, col));
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(m(i, col)) > best) { best = std::abs(m(i, col)); prow = i; }
        if (best == 0.0) throw std::runtime_error("inverse: singular matrix");
        if (prow != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(prow, j), m(col, j));
                std::swap(inv(prow, j), inv(col, j));
            }
        const cplx p = m(col, col);
        for (std::size_t j = 0; j < n; ++j) { m(col, j) /= p; inv(col, j) /= p; }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const cplx f = m(i, col);
            if (f == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace udefect
