#pragma once

/**
 * @brief Exact Fourier matrices over roots of unity and their symmetries.
 *
 * Entries are roots of unity stored as integer exponents modulo the group
 * exponent L, so every identity in this module is checked by exact integer
 * comparison.  Covers the diagonal/shift matrix algebra, the column-matching
 * h-map, permutation-equivalence witnesses, and the stabilizer machinery
 * (permutation part, shift-enphased part, and the two-way factorization).
 */

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "udefect/abelian.hpp"
#include "udefect/complexmat.hpp"
#include "udefect/errors.hpp"

namespace udefect {

/// An exact root of unity e^{2*pi*i*exponent/modulus}.
struct CycloScalar {
    std::int64_t modulus = 1;
    std::int64_t exponent = 0;

    CycloScalar() = default;
    CycloScalar(std::int64_t mod, std::int64_t exp) : modulus(mod) {
        if (mod < 1) throw std::invalid_argument("CycloScalar: modulus must be positive");
        exponent = ((exp % mod) + mod) % mod;
    }

    static CycloScalar one(std::int64_t mod) { return CycloScalar(mod, 0); }

    bool is_one() const { return exponent == 0; }

    CycloScalar conj() const { return CycloScalar(modulus, -exponent); }

    friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
        if (a.modulus != b.modulus) throw std::invalid_argument("CycloScalar: modulus mismatch");
        return CycloScalar(a.modulus, a.exponent + b.exponent);
    }

    friend bool operator==(const CycloScalar& a, const CycloScalar& b) {
        return a.modulus == b.modulus && a.exponent == b.exponent;
    }

    cplx value() const {
        const double t = 2.0 * 3.14159265358979323846 *
                         static_cast<double>(exponent) / static_cast<double>(modulus);
        return {std::cos(t), std::sin(t)};
    }
};

/**
 * @brief The character table of a finite abelian group as an exact matrix.
 *
 * Entry (i,j) is the root of unity with exponent sum_x (L/N_x) * i_x * j_x
 * (mod L); rows and columns are addressed by group elements, with ordinal
 * layout given by the lexicographic order of the residue tuples.
 */
class ExactFourierMatrix {
public:
    explicit ExactFourierMatrix(AbelianGroup g) : group_(std::move(g)) {}

    const AbelianGroup& group() const { return group_; }
    std::int64_t size() const { return group_.order(); }
    std::int64_t modulus() const { return group_.exponent(); }

    std::int64_t exponent_at(const GroupElement& i, const GroupElement& j) const {
        group_.require_valid(i);
        group_.require_valid(j);
        const std::int64_t l = modulus();
        std::int64_t e = 0;
        for (std::size_t x = 0; x < i.size(); ++x) {
            const std::int64_t nx = group_.orders()[x];
            e = (e + (l / nx) * ((i[x] * j[x]) % nx)) % l;
        }
        return e;
    }

    std::int64_t exponent_at(std::int64_t i, std::int64_t j) const {
        return exponent_at(group_.element_at(i), group_.element_at(j));
    }

    CycloScalar entry(const GroupElement& i, const GroupElement& j) const {
        return CycloScalar(modulus(), exponent_at(i, j));
    }

    CycloScalar entry(std::int64_t i, std::int64_t j) const {
        return CycloScalar(modulus(), exponent_at(i, j));
    }

private:
    AbelianGroup group_;
};

inline ExactFourierMatrix fourier_matrix(const AbelianGroup& g) { return ExactFourierMatrix(g); }

/// Exact count of entries equal to 1; this is the undephased defect.
inline std::int64_t count_ones(const ExactFourierMatrix& f) {
    const std::int64_t n = f.size();
    std::int64_t c = 0;
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j)
            if (f.exponent_at(i, j) == 0) ++c;
    return c;
}

/// Multiset of entries of F (equivalently, the spectrum of its Berezin transform).
inline std::map<std::int64_t, std::int64_t> entry_multiset(const ExactFourierMatrix& f) {
    std::map<std::int64_t, std::int64_t> m;
    const std::int64_t n = f.size();
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j) ++m[f.exponent_at(i, j)];
    return m;
}

/// Dense exact matrix: each cell is either zero or a root of unity mod a shared L.
class CycloDense {
public:
    CycloDense(std::int64_t n, std::int64_t modulus)
        : n_(n), modulus_(modulus),
          e_(static_cast<std::size_t>(n * n), std::optional<std::int64_t>{}) {}

    static CycloDense from_fourier(const ExactFourierMatrix& f) {
        CycloDense d(f.size(), f.modulus());
        for (std::int64_t i = 0; i < f.size(); ++i)
            for (std::int64_t j = 0; j < f.size(); ++j) d.set(i, j, f.exponent_at(i, j));
        return d;
    }

    std::int64_t size() const { return n_; }
    std::int64_t modulus() const { return modulus_; }

    const std::optional<std::int64_t>& at(std::int64_t i, std::int64_t j) const {
        return e_[static_cast<std::size_t>(i * n_ + j)];
    }

    void set(std::int64_t i, std::int64_t j, std::int64_t exponent) {
        e_[static_cast<std::size_t>(i * n_ + j)] = ((exponent % modulus_) + modulus_) % modulus_;
    }

    void clear(std::int64_t i, std::int64_t j) {
        e_[static_cast<std::size_t>(i * n_ + j)] = std::nullopt;
    }

    friend bool operator==(const CycloDense& a, const CycloDense& b) {
        return a.n_ == b.n_ && a.modulus_ == b.modulus_ && a.e_ == b.e_;
    }

private:
    std::int64_t n_;
    std::int64_t modulus_;
    std::vector<std::optional<std::int64_t>> e_;
};

/**
 * @brief Exact generalized permutation matrix (enphased permutation).
 *
 * Row i has its single nonzero at column col[i], with value the root of unity
 * of exponent d[i] mod L.  These matrices are unitary, so the inverse is the
 * adjoint.
 */
class ExactGenPerm {
public:
    ExactGenPerm(std::int64_t n, std::int64_t modulus)
        : n_(n), modulus_(modulus), col_(static_cast<std::size_t>(n)),
          d_(static_cast<std::size_t>(n), 0) {
        for (std::int64_t i = 0; i < n; ++i) col_[static_cast<std::size_t>(i)] = i;
    }

    static ExactGenPerm identity(std::int64_t n, std::int64_t modulus) {
        return ExactGenPerm(n, modulus);
    }

    std::int64_t size() const { return n_; }
    std::int64_t modulus() const { return modulus_; }

    std::int64_t col(std::int64_t i) const { return col_[static_cast<std::size_t>(i)]; }
    std::int64_t exp(std::int64_t i) const { return d_[static_cast<std::size_t>(i)]; }

    void set_row(std::int64_t i, std::int64_t column, std::int64_t exponent) {
        col_[static_cast<std::size_t>(i)] = column;
        d_[static_cast<std::size_t>(i)] = ((exponent % modulus_) + modulus_) % modulus_;
    }

    bool is_permutation() const {
        for (std::int64_t e : d_)
            if (e != 0) return false;
        return true;
    }

    /// (AB)[i] sits at colB[colA[i]] with exponent dA[i] + dB[colA[i]].
    friend ExactGenPerm operator*(const ExactGenPerm& a, const ExactGenPerm& b) {
        if (a.n_ != b.n_ || a.modulus_ != b.modulus_)
            throw std::invalid_argument("ExactGenPerm: shape/modulus mismatch");
        ExactGenPerm r(a.n_, a.modulus_);
        for (std::int64_t i = 0; i < a.n_; ++i)
            r.set_row(i, b.col(a.col(i)), a.exp(i) + b.exp(a.col(i)));
        return r;
    }

    ExactGenPerm adjoint() const {
        ExactGenPerm r(n_, modulus_);
        for (std::int64_t i = 0; i < n_; ++i) r.set_row(col(i), i, -exp(i));
        return r;
    }

    ExactGenPerm transpose() const {
        ExactGenPerm r(n_, modulus_);
        for (std::int64_t i = 0; i < n_; ++i) r.set_row(col(i), i, exp(i));
        return r;
    }

    ExactGenPerm conj() const {
        ExactGenPerm r(n_, modulus_);
        for (std::int64_t i = 0; i < n_; ++i) r.set_row(i, col(i), -exp(i));
        return r;
    }

    ExactGenPerm inverse() const { return adjoint(); }

    /// Scalar multiple by a root of unity.
    friend ExactGenPerm operator*(const CycloScalar& s, const ExactGenPerm& a) {
        if (s.modulus != a.modulus_) throw std::invalid_argument("scalar modulus mismatch");
        ExactGenPerm r = a;
        for (std::int64_t i = 0; i < a.n_; ++i) r.set_row(i, a.col(i), a.exp(i) + s.exponent);
        return r;
    }

    CycloDense dense() const {
        CycloDense d(n_, modulus_);
        for (std::int64_t i = 0; i < n_; ++i) d.set(i, col(i), exp(i));
        return d;
    }

    friend bool operator==(const ExactGenPerm& a, const ExactGenPerm& b) {
        return a.n_ == b.n_ && a.modulus_ == b.modulus_ && a.col_ == b.col_ && a.d_ == b.d_;
    }

private:
    std::int64_t n_;
    std::int64_t modulus_;
    std::vector<std::int64_t> col_;
    std::vector<std::int64_t> d_;
};

/// Pair (S, T) of enphased permutations acting by X -> S X T*.
struct ExactGeneralizedPermPair {
    ExactGenPerm left;
    ExactGenPerm right;

    friend bool operator==(const ExactGeneralizedPermPair& a, const ExactGeneralizedPermPair& b) {
        return a.left == b.left && a.right == b.right;
    }
};

inline ExactGeneralizedPermPair identity_pair(std::int64_t n, std::int64_t modulus) {
    return {ExactGenPerm::identity(n, modulus), ExactGenPerm::identity(n, modulus)};
}

/// Pointwise pair product: actions compose as (S1 S2, T1 T2).
inline ExactGeneralizedPermPair pair_mul(const ExactGeneralizedPermPair& a,
                                         const ExactGeneralizedPermPair& b) {
    return {a.left * b.left, a.right * b.right};
}

/// Applies the action X -> S X T* to a dense exact matrix.
inline CycloDense apply_pair(const ExactGeneralizedPermPair& p, const CycloDense& x) {
    const std::int64_t n = x.size();
    if (p.left.size() != n || p.right.size() != n)
        throw std::invalid_argument("apply_pair: shape mismatch");
    if (p.left.modulus() != x.modulus() || p.right.modulus() != x.modulus())
        throw std::invalid_argument("apply_pair: modulus mismatch");
    CycloDense r(n, x.modulus());
    // (S X T*)(i,j) = omega^{dS[i] - dT[j]} * X(colS[i], colT[j]).
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j) {
            const auto& src = x.at(p.left.col(i), p.right.col(j));
            if (src) r.set(i, j, *src + p.left.exp(i) - p.right.exp(j));
        }
    return r;
}

/// Left product A * X of an enphased permutation with a dense exact matrix.
inline CycloDense left_mul(const ExactGenPerm& a, const CycloDense& x) {
    if (a.size() != x.size() || a.modulus() != x.modulus())
        throw std::invalid_argument("left_mul: shape/modulus mismatch");
    CycloDense r(x.size(), x.modulus());
    for (std::int64_t i = 0; i < x.size(); ++i)
        for (std::int64_t j = 0; j < x.size(); ++j)
            if (const auto& src = x.at(a.col(i), j)) r.set(i, j, *src + a.exp(i));
    return r;
}

/// Right product X * B of a dense exact matrix with an enphased permutation.
inline CycloDense right_mul(const CycloDense& x, const ExactGenPerm& b) {
    if (b.size() != x.size() || b.modulus() != x.modulus())
        throw std::invalid_argument("right_mul: shape/modulus mismatch");
    CycloDense r(x.size(), x.modulus());
    for (std::int64_t i = 0; i < x.size(); ++i)
        for (std::int64_t k = 0; k < x.size(); ++k)
            if (const auto& src = x.at(i, k)) r.set(i, b.col(k), *src + b.exp(k));
    return r;
}

/// Scalar multiple of a dense exact matrix by a root of unity.
inline CycloDense scalar_mul(const CycloScalar& s, const CycloDense& x) {
    if (s.modulus != x.modulus()) throw std::invalid_argument("scalar_mul: modulus mismatch");
    CycloDense r = x;
    for (std::int64_t i = 0; i < x.size(); ++i)
        for (std::int64_t j = 0; j < x.size(); ++j)
            if (const auto& src = x.at(i, j)) r.set(i, j, *src + s.exponent);
    return r;
}

/// Diagonal matrix of row k of F.
inline ExactGenPerm w_matrix(const ExactFourierMatrix& f, const GroupElement& k) {
    ExactGenPerm w(f.size(), f.modulus());
    for (std::int64_t i = 0; i < f.size(); ++i)
        w.set_row(i, i, f.exponent_at(k, f.group().element_at(i)));
    return w;
}

/// Translation permutation with ones at (i, i+k).
inline ExactGenPerm z_matrix(const ExactFourierMatrix& f, const GroupElement& k) {
    const AbelianGroup& g = f.group();
    ExactGenPerm z(f.size(), f.modulus());
    for (std::int64_t i = 0; i < f.size(); ++i)
        z.set_row(i, g.index_of(g.add(g.element_at(i), k)), 0);
    return z;
}

/**
 * @brief The column pairing induced by a row isomorphism.
 *
 * Given chi : I_G -> I_F, finds for each column j of F the unique column h(j)
 * of G with F(chi(i), j) = G(i, h(j)) for all i, by exact column matching.
 * The result is an isomorphism I_F -> I_G.
 */
inline GroupIsomorphism h_map(const ExactFourierMatrix& f, const ExactFourierMatrix& g,
                              const GroupIsomorphism& chi) {
    if (f.size() != g.size() || f.modulus() != g.modulus())
        throw std::invalid_argument("h_map: incompatible matrices");
    if (!(chi.source() == g.group()) || !(chi.target() == f.group()))
        throw std::invalid_argument("h_map: isomorphism endpoints mismatch");
    const std::int64_t n = f.size();
    std::vector<std::int64_t> table(static_cast<std::size_t>(n), -1);
    for (std::int64_t j = 0; j < n; ++j) {
        std::int64_t match = -1;
        for (std::int64_t c = 0; c < n; ++c) {
            bool ok = true;
            for (std::int64_t i = 0; i < n; ++i) {
                const GroupElement chi_i = chi.apply(g.group().element_at(i));
                if (f.exponent_at(f.group().index_of(chi_i), j) != g.exponent_at(i, c)) {
                    ok = false;
                    break;
                }
            }
            if (ok) { match = c; break; }
        }
        if (match < 0) throw consistency_error("h_map: no matching column");
        table[static_cast<std::size_t>(j)] = match;
    }
    GroupIsomorphism h(f.group(), g.group(), std::move(table));
    if (!h.verify()) throw consistency_error("h_map: column pairing is not an isomorphism");
    return h;
}

/// Permutation matrix of a map phi given by an ordinal table: ones at (k, phi(k)).
inline ExactGenPerm perm_matrix_of(const GroupIsomorphism& phi, std::int64_t modulus) {
    ExactGenPerm p(phi.source().order(), modulus);
    for (std::int64_t k = 0; k < phi.source().order(); ++k) p.set_row(k, phi.apply_index(k), 0);
    return p;
}

/**
 * @brief Permutation-equivalence witness: a pair with S F T* = G, when one exists.
 *
 * Present exactly when the indexing groups are isomorphic.  The witness uses
 * the first isomorphism found under the generator-image enumeration order; no
 * canonicity is claimed.
 */
inline std::optional<ExactGeneralizedPermPair> perm_equivalent(const ExactFourierMatrix& f,
                                                               const ExactFourierMatrix& g,
                                                               std::int64_t order_cap = 64) {
    if (f.size() != g.size()) throw std::invalid_argument("perm_equivalent: size mismatch");
    if (!groups_isomorphic(f.group(), g.group())) return std::nullopt;
    // Same indexing group: the identity already witnesses the equivalence.
    const GroupIsomorphism chi1 = [&] {
        if (f.group() == g.group()) return GroupIsomorphism::identity(f.group());
        const auto isos = isomorphisms_between(g.group(), f.group(), order_cap);
        if (isos.empty()) throw consistency_error("perm_equivalent: no isomorphism found");
        return isos.front();
    }();
    const GroupIsomorphism chi2 = h_map(f, g, chi1).inverse();
    ExactGeneralizedPermPair pair{perm_matrix_of(chi1, f.modulus()),
                                  perm_matrix_of(chi2, f.modulus())};
    if (!(apply_pair(pair, CycloDense::from_fourier(f)) == CycloDense::from_fourier(g)))
        throw consistency_error("perm_equivalent: witness failed verification");
    return pair;
}

/// All purely-permutational stabilizer pairs of F, one per automorphism of I_F.
inline std::vector<ExactGeneralizedPermPair> stabilizer_perm_pairs(const ExactFourierMatrix& f,
                                                                   std::int64_t order_cap = 64) {
    const auto autos = isomorphisms_between(f.group(), f.group(), order_cap);
    std::vector<ExactGeneralizedPermPair> out;
    const CycloDense df = CycloDense::from_fourier(f);
    for (const GroupIsomorphism& rho : autos) {
        ExactGeneralizedPermPair pair{perm_matrix_of(rho, f.modulus()),
                                      perm_matrix_of(h_map(f, f, rho).inverse(), f.modulus())};
        if (!(apply_pair(pair, df) == df))
            throw consistency_error("stabilizer_perm_pairs: pair does not fix F");
        out.push_back(std::move(pair));
    }
    return out;
}

/// Element (s, t, theta) of the shift-enphased symmetry group of F.
struct SymmetryElement {
    GroupElement s;
    GroupElement t;
    CycloScalar theta;

    friend bool operator==(const SymmetryElement& a, const SymmetryElement& b) {
        return a.s == b.s && a.t == b.t && a.theta == b.theta;
    }
};

inline SymmetryElement symmetry_identity(const ExactFourierMatrix& f) {
    return {f.group().zero(), f.group().zero(), CycloScalar::one(f.modulus())};
}

/// Group law (s1,t1,th1)*(s2,t2,th2) = (s1+s2, t1+t2, th1*th2*F(s2,t1)).
inline SymmetryElement symmetry_mul(const ExactFourierMatrix& f, const SymmetryElement& a,
                                    const SymmetryElement& b) {
    if (a.theta.modulus != b.theta.modulus)
        throw std::invalid_argument("symmetry_mul: phase modulus mismatch");
    return {f.group().add(a.s, b.s), f.group().add(a.t, b.t),
            a.theta * b.theta * f.entry(b.s, a.t)};
}

/**
 * @brief The stabilizer pair of a symmetry element:
 * S = theta * W_s * Z_t,  T = theta * conj(F(s,t)) * W_t * Z_{-s}.
 */
inline ExactGeneralizedPermPair s_pair(const ExactFourierMatrix& f, const SymmetryElement& e) {
    const AbelianGroup& g = f.group();
    const std::int64_t l = f.modulus();
    ExactGenPerm s(f.size(), l), t(f.size(), l);
    const std::int64_t fst = f.exponent_at(e.s, e.t);
    for (std::int64_t i = 0; i < f.size(); ++i) {
        const GroupElement gi = g.element_at(i);
        s.set_row(i, g.index_of(g.add(gi, e.t)), e.theta.exponent + f.exponent_at(e.s, gi));
        t.set_row(i, g.index_of(g.add(gi, g.neg(e.s))),
                  e.theta.exponent - fst + f.exponent_at(e.t, gi));
    }
    return {s, t};
}

/// Both orderings of the unique stabilizer factorization of a pair.
struct StabilizerFactorization {
    GroupIsomorphism rho_left;              ///< row automorphism of the permutation part
    GroupIsomorphism rho_right;             ///< column automorphism (= h-map inverse of rho_left)
    ExactGeneralizedPermPair perm_pair;     ///< (P_rho_left, P_rho_right)
    SymmetryElement shift_right;            ///< factor when the permutation part is on the left
    SymmetryElement shift_left;             ///< factor when the permutation part is on the right
};

/**
 * @brief Splits a stabilizing pair into permutation and shift-enphased factors.
 *
 * Both factorizations pair = perm * s_pair(shift_right)
 *                       = s_pair(shift_left) * perm
 * are returned; each is unique.  The shift parameters are read off row 0 of
 * the input (the permutation part fixes row 0 because automorphisms fix the
 * identity), then the permutation factors are recovered by exact division.
 */
inline StabilizerFactorization semidirect_factorize(const ExactFourierMatrix& f,
                                                    const ExactGeneralizedPermPair& pair,
                                                    std::int64_t order_cap = 64) {
    const AbelianGroup& g = f.group();
    const std::int64_t l = f.modulus();
    const CycloDense df = CycloDense::from_fourier(f);
    if (!(apply_pair(pair, df) == df))
        throw std::invalid_argument("semidirect_factorize: pair does not stabilize the matrix");
    if (f.size() > order_cap)
        throw capacity_error("semidirect_factorize: order above cap");

    const GroupElement t = g.element_at(pair.left.col(0));
    const CycloScalar theta(l, pair.left.exp(0));
    const GroupElement s = g.neg(g.element_at(pair.right.col(0)));
    const std::int64_t fst = f.exponent_at(s, t);
    if (((pair.right.exp(0) - theta.exponent + fst) % l + l) % l != 0)
        throw consistency_error("semidirect_factorize: inconsistent phases on row 0");

    const SymmetryElement shift{s, t, theta};
    const ExactGeneralizedPermPair sp = s_pair(f, shift);
    const ExactGenPerm p_left = pair.left * sp.left.inverse();
    const ExactGenPerm p_right = pair.right * sp.right.inverse();
    if (!p_left.is_permutation() || !p_right.is_permutation())
        throw consistency_error("semidirect_factorize: residual factor is not a permutation");

    auto iso_of = [&](const ExactGenPerm& p) {
        std::vector<std::int64_t> table(static_cast<std::size_t>(f.size()));
        for (std::int64_t k = 0; k < f.size(); ++k) table[static_cast<std::size_t>(k)] = p.col(k);
        GroupIsomorphism iso(g, g, std::move(table));
        if (!iso.verify())
            throw consistency_error("semidirect_factorize: permutation part is not an automorphism");
        return iso;
    };
    GroupIsomorphism rho_left = iso_of(p_left);
    GroupIsomorphism rho_right = iso_of(p_right);
    if (!(rho_right == h_map(f, f, rho_left).inverse()))
        throw consistency_error("semidirect_factorize: column permutation mismatch");

    const SymmetryElement swapped{rho_right.inverse().apply(s), rho_left.inverse().apply(t), theta};
    const ExactGeneralizedPermPair perm_pair{p_left, p_right};
    if (!(pair_mul(perm_pair, sp) == pair) ||
        !(pair_mul(s_pair(f, swapped), perm_pair) == pair))
        throw consistency_error("semidirect_factorize: re-multiplication check failed");

    return {std::move(rho_left), std::move(rho_right), perm_pair, shift, swapped};
}

/// Per-column symmetry structure of the feasible-space parametrization.
struct PcmColumn {
    GroupElement j;            ///< column label
    std::int64_t order;        ///< ord(j) in the indexing group
    std::int64_t coset_count;  ///< N / ord(j) = free parameters carried by the column
    std::int64_t paired_with;  ///< ordinal of -j (conjugation partner; self when 2j = 0)
};

struct PcmPattern {
    std::int64_t parameter_count = 0;
    std::vector<PcmColumn> columns;
};

/**
 * @brief Coset-and-conjugation pattern of the feasible space of (1/sqrt N) F.
 *
 * Column j repeats along cosets of the cyclic subgroup generated by j and is
 * conjugate-tied to column -j; the total real parameter count sum_j N/ord(j)
 * equals the undephased defect.
 */
inline PcmPattern pcm_pattern(const ExactFourierMatrix& f) {
    const AbelianGroup& g = f.group();
    PcmPattern out;
    for (std::int64_t j = 0; j < f.size(); ++j) {
        const GroupElement e = g.element_at(j);
        const std::int64_t ord = element_order(g, e);
        out.columns.push_back({e, ord, g.order() / ord, g.index_of(g.neg(e))});
        out.parameter_count += g.order() / ord;
    }
    return out;
}

/// Numeric realization; optionally scaled by 1/sqrt(N) to make the result unitary.
inline ComplexMatrix to_complex(const ExactFourierMatrix& f, bool normalized = false) {
    const std::size_t n = static_cast<std::size_t>(f.size());
    const double scale = normalized ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = scale * f.entry(static_cast<std::int64_t>(i),
                                      static_cast<std::int64_t>(j)).value();
    return m;
}

inline ComplexMatrix to_complex(const CycloDense& d) {
    const std::size_t n = static_cast<std::size_t>(d.size());
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& e = d.at(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
            if (e) m(i, j) = CycloScalar(d.modulus(), *e).value();
        }
    return m;
}

inline ComplexMatrix to_complex(const ExactGenPerm& p) { return to_complex(p.dense()); }

/// Elementwise conjugation (S,T) -> (A S A^{-1}, B T B^{-1}) by the pair (A,B).
inline std::vector<ExactGeneralizedPermPair> conjugate_pairs(
    const std::vector<ExactGeneralizedPermPair>& pairs, const ExactGeneralizedPermPair& by) {
    std::vector<ExactGeneralizedPermPair> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs)
        out.push_back({by.left * p.left * by.left.inverse(),
                       by.right * p.right * by.right.inverse()});
    return out;
}

} // namespace udefect
