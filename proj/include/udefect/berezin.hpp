#pragma once

/**
 * @brief The Berezin transform of a unitary matrix and numeric defect methods.
 *
 * For a zero-free unitary U the Berezin transform acts on N x N matrices as
 * I_U(X) = U^{(-1 entrywise)} o (U (conj(X) o U)* U); the multiplicity of its
 * eigenvalue 1 is the undephased defect.  This module builds I_U as an
 * N^2 x N^2 matrix, computes the defect both from the kernel of (I_U - id)
 * and from the explicit real linear system, and extracts a feasible-space
 * basis.
 */

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "udefect/complexmat.hpp"
#include "udefect/defectcalc.hpp"
#include "udefect/errors.hpp"

namespace udefect {

/// Input has an (approximately) zero entry; the defect theory excludes these.
class zero_entry_error : public std::domain_error {
public:
    explicit zero_entry_error(const std::string& what) : std::domain_error(what) {}
};

/// Input is not (a rescaling of) a unitary matrix.
class non_unitary_error : public std::domain_error {
public:
    explicit non_unitary_error(const std::string& what) : std::domain_error(what) {}
};

inline constexpr double kUnitarityTol = 1e-8;
inline constexpr double kZeroEntryRel = 1e-12;
inline constexpr double kDefaultRankTol = 1e-9;

/// Gram matrix U* U.
inline ComplexMatrix gram(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("gram: matrix not square");
    return u.adjoint() * u;
}

/// Entrywise squared moduli U o conj(U).
inline ComplexMatrix moduli_sq(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("moduli_sq: matrix not square");
    return hadamard(u, u.conj());
}

/**
 * @brief Admits U as a unitary, normalizing scalar rescalings.
 *
 * Accepts U when U*U = I within tolerance; also accepts c-rescaled unitaries
 * by detecting U*U = cI and dividing by sqrt(c).  Anything else raises
 * non_unitary_error.
 */
inline ComplexMatrix admit_unitary(const ComplexMatrix& u, double tol = kUnitarityTol) {
    if (u.rows() != u.cols()) throw non_unitary_error("matrix not square");
    const std::size_t n = u.rows();
    const ComplexMatrix g = gram(u);
    const double c = g.trace().real() / static_cast<double>(n);
    if (c <= 0.0) throw non_unitary_error("Gram matrix has nonpositive trace");
    double dev_scaled = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx want = (i == j) ? cplx{c, 0.0} : cplx{0.0, 0.0};
            dev_scaled = std::max(dev_scaled, std::abs(g(i, j) - want));
        }
    if (dev_scaled > tol * std::max(1.0, c))
        throw non_unitary_error("U*U deviates from a multiple of the identity");
    if (std::abs(c - 1.0) <= tol) return u;
    return cplx{1.0 / std::sqrt(c), 0.0} * u;
}

/// Rejects matrices with an entry vanishing relative to the largest one.
inline void require_zero_free(const ComplexMatrix& u) {
    if (u.min_abs() < kZeroEntryRel * u.max_abs())
        throw zero_entry_error("matrix has a (near-)zero entry; defect theory requires none");
}

/// C_U(X) = (X o U) U*.
inline ComplexMatrix c_op(const ComplexMatrix& u, const ComplexMatrix& x) {
    return hadamard(x, u) * u.adjoint();
}

/// D_U(X) = U (conj(X) o U)*.
inline ComplexMatrix d_op(const ComplexMatrix& u, const ComplexMatrix& x) {
    return u * hadamard(x.conj(), u).adjoint();
}

/// I_U(X) with the closed form: entrywise quotient of U (conj(X) o U)* U by U.
inline ComplexMatrix berezin_apply(const ComplexMatrix& u, const ComplexMatrix& x) {
    require_zero_free(u);
    const ComplexMatrix t = u * hadamard(x.conj(), u).adjoint() * u;
    ComplexMatrix r(u.rows(), u.cols());
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) r(i, j) = t(i, j) / u(i, j);
    return r;
}

/// The transform as an N^2 x N^2 matrix over row-major vec (trace = N).
struct BerezinOperatorMatrix {
    std::size_t n = 0;
    ComplexMatrix matrix;
};

inline BerezinOperatorMatrix berezin_matrix(const ComplexMatrix& u) {
    require_zero_free(u);
    const std::size_t n = u.rows();
    ComplexMatrix m(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    m(i * n + j, k * n + l) =
                        u(i, l) * u(k, j) * std::conj(u(k, l)) / u(i, j);
    return {n, std::move(m)};
}

/// Matrix of C_U over row-major vec: block-diagonal with entries U_{i,l} conj(U_{j,l}).
inline ComplexMatrix c_matrix(const ComplexMatrix& u) {
    const std::size_t n = u.rows();
    ComplexMatrix m(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                m(i * n + j, i * n + l) = u(i, l) * std::conj(u(j, l));
    return m;
}

/// Matrix of D_U over row-major vec: entries at ((i,j),(j,l)) equal U_{i,l} conj(U_{j,l}).
inline ComplexMatrix d_matrix(const ComplexMatrix& u) {
    const std::size_t n = u.rows();
    ComplexMatrix m(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                m(i * n + j, j * n + l) = u(i, l) * std::conj(u(j, l));
    return m;
}

/// J_U = C_U D_U^{-1} as an N^2 x N^2 matrix; unitary for unitary zero-free U.
inline ComplexMatrix j_matrix(const ComplexMatrix& u) {
    require_zero_free(u);
    return c_matrix(u) * inverse(d_matrix(u));
}

/// Weighted inner product sum |U_{ij}|^2 X_{ij} conj(Y_{ij}).
inline cplx weighted_inner(const ComplexMatrix& u, const ComplexMatrix& x,
                           const ComplexMatrix& y) {
    if (x.rows() != u.rows() || x.cols() != u.cols() || y.rows() != u.rows() ||
        y.cols() != u.cols())
        throw std::invalid_argument("weighted_inner: shape mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j)
            s += std::norm(u(i, j)) * x(i, j) * std::conj(y(i, j));
    return s;
}

/// Undephased defect as N^2 - rank(I_U - id) at the given tolerance.
inline DefectReport defect_kernel_berezin(const ComplexMatrix& input,
                                          double tol = kDefaultRankTol) {
    const ComplexMatrix u = admit_unitary(input);
    require_zero_free(u);
    const std::size_t n = u.rows();
    const BerezinOperatorMatrix b = berezin_matrix(u);
    const EliminationResult e =
        eliminate_with_tol(b.matrix - ComplexMatrix::identity(n * n), tol);
    DefectReport r;
    r.n = static_cast<std::int64_t>(n);
    r.undephased = static_cast<std::int64_t>(n * n - e.rank);
    r.dephased = r.undephased - (2 * static_cast<std::int64_t>(n) - 1);
    r.method = DefectMethod::kernel_berezin;
    r.tolerance = tol;
    r.pivot_gap_warning = e.pivot_gap_warning;
    return r;
}

/**
 * @brief Undephased defect from the explicit real linear system.
 *
 * Unknowns are the N^2 real entries of R; each pair i < j contributes the
 * complex equation sum_k U_{ik} conj(U_{jk}) (R_{ik} - R_{jk}) = 0, split into
 * real and imaginary rows.  The defect is N^2 minus the rank.
 */
inline DefectReport defect_linear_system(const ComplexMatrix& input,
                                         double tol = kDefaultRankTol) {
    const ComplexMatrix u = admit_unitary(input);
    require_zero_free(u);
    const std::size_t n = u.rows();
    ComplexMatrix sys(n * (n - 1), n * n);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const cplx c = u(i, k) * std::conj(u(j, k));
                sys(row, i * n + k) += cplx{c.real(), 0.0};
                sys(row, j * n + k) -= cplx{c.real(), 0.0};
                sys(row + 1, i * n + k) += cplx{c.imag(), 0.0};
                sys(row + 1, j * n + k) -= cplx{c.imag(), 0.0};
            }
            row += 2;
        }
    const EliminationResult e = eliminate_with_tol(sys, tol);
    DefectReport r;
    r.n = static_cast<std::int64_t>(n);
    r.undephased = static_cast<std::int64_t>(n * n - e.rank);
    r.dephased = r.undephased - (2 * static_cast<std::int64_t>(n) - 1);
    r.method = DefectMethod::linear_system;
    r.tolerance = tol;
    r.pivot_gap_warning = e.pivot_gap_warning;
    return r;
}

/// The 2N-1 always-feasible directions {i diag(e_k) U} and {U i diag(e_l), l >= 1}.
inline std::vector<ComplexMatrix> trivial_basis(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("trivial_basis: matrix not square");
    const std::size_t n = u.rows();
    std::vector<ComplexMatrix> out;
    const cplx iunit{0.0, 1.0};
    for (std::size_t k = 0; k < n; ++k) {
        ComplexMatrix v(n, n);
        for (std::size_t j = 0; j < n; ++j) v(k, j) = iunit * u(k, j);
        out.push_back(std::move(v));
    }
    for (std::size_t l = 1; l < n; ++l) {
        ComplexMatrix v(n, n);
        for (std::size_t i = 0; i < n; ++i) v(i, l) = iunit * u(i, l);
        out.push_back(std::move(v));
    }
    return out;
}

/// Basis of the feasible space: vectors i R o U together with their R matrices.
struct FeasibleBasis {
    std::size_t n = 0;
    std::vector<ComplexMatrix> vectors;
    std::vector<ComplexMatrix> r_matrices;
};

/**
 * @brief Extracts a feasible-space basis from the kernel of (I_U - id).
 *
 * The kernel is computed as complex vectors V_k; the candidate real matrices
 * {Re V_k, Im V_k} span the eigenspace's real form, and a maximal
 * real-independent subset of size equal to the defect is selected by pivoted
 * elimination.  Each selected R yields the feasible vector i R o U.
 */
inline FeasibleBasis feasible_basis(const ComplexMatrix& input, double tol = kDefaultRankTol) {
    const ComplexMatrix u = admit_unitary(input);
    require_zero_free(u);
    const std::size_t n = u.rows();
    const BerezinOperatorMatrix b = berezin_matrix(u);
    const EliminationResult e =
        eliminate_with_tol(b.matrix - ComplexMatrix::identity(n * n), tol);
    const std::size_t defect = n * n - e.rank;

    // Candidate real matrices from real and imaginary parts of kernel vectors.
    std::vector<ComplexMatrix> candidates;
    for (const auto& v : e.kernel) {
        ComplexMatrix re(n, n), im(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                re(i, j) = cplx{v[i * n + j].real(), 0.0};
                im(i, j) = cplx{v[i * n + j].imag(), 0.0};
            }
        candidates.push_back(std::move(re));
        candidates.push_back(std::move(im));
    }

    // Select a maximal independent subset over the reals.
    ComplexMatrix stack(n * n, candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) stack(i * n + j, c) = candidates[c](i, j);
    const EliminationResult sel = eliminate_with_tol(stack, tol);
    if (sel.rank != defect)
        throw consistency_error("feasible_basis: independent candidate count "
                                "does not match the defect");

    FeasibleBasis out;
    out.n = n;
    std::vector<std::size_t> chosen(sel.pivot_columns);
    std::sort(chosen.begin(), chosen.end());
    const cplx iunit{0.0, 1.0};
    for (std::size_t c : chosen) {
        const ComplexMatrix& r = candidates[c];
        ComplexMatrix v(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v(i, j) = iunit * r(i, j) * u(i, j);
        out.r_matrices.push_back(r);
        out.vectors.push_back(std::move(v));
    }
    return out;
}

} // namespace udefect
