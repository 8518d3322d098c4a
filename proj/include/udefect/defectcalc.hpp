#pragma once

/**
 * @brief Closed-form defect arithmetic for Fourier matrices.
 *
 * Implements the single-prime ("primary") product formulas in five published
 * variants, the multiplicative assembly across coprime prime blocks, the
 * cyclic and order-sum formulas, divisibility checks, and the Kronecker
 * lower bound.  All intermediate arithmetic is arbitrary width.
 */

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "udefect/abelian.hpp"
#include "udefect/errors.hpp"

namespace udefect {

using bigint = boost::multiprecision::cpp_int;

inline bigint big_pow(const bigint& base, std::int64_t e) {
    if (e < 0) throw std::invalid_argument("big_pow: negative exponent");
    bigint r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// A Kronecker product of single-prime DFT factors F_{a^{k_1}} x ... x F_{a^{k_s}}.
struct PrimaryProfile {
    std::int64_t a;                ///< the prime
    std::vector<std::int64_t> ks;  ///< factor exponents, zeros permitted

    PrimaryProfile(std::int64_t prime, std::vector<std::int64_t> exps)
        : a(prime), ks(std::move(exps)) {
        if (a < 2) throw std::invalid_argument("PrimaryProfile: prime must be >= 2");
        for (std::int64_t p = 2; p * p <= a; ++p)
            if (a % p == 0) throw std::invalid_argument("PrimaryProfile: base is not prime");
        if (ks.empty()) throw std::invalid_argument("PrimaryProfile: empty exponent list");
        for (std::int64_t k : ks)
            if (k < 0) throw std::invalid_argument("PrimaryProfile: negative exponent");
    }

    std::int64_t k_max() const { return *std::max_element(ks.begin(), ks.end()); }
    std::int64_t k_sum() const { return std::accumulate(ks.begin(), ks.end(), std::int64_t{0}); }
    std::size_t s() const { return ks.size(); }
    bigint n() const { return big_pow(a, k_sum()); }
};

/// Number of exponents strictly below l.
inline std::int64_t kappa_below(const PrimaryProfile& p, std::int64_t l) {
    return static_cast<std::int64_t>(
        std::count_if(p.ks.begin(), p.ks.end(), [l](std::int64_t k) { return k < l; }));
}

inline std::int64_t sum_min(const PrimaryProfile& p, std::int64_t m) {
    std::int64_t s = 0;
    for (std::int64_t k : p.ks) s += std::min(k, m);
    return s;
}

/// Number of group elements of order a^m in Z_{a^{k_1}} x ... x Z_{a^{k_s}}.
inline bigint rows_of_type(const PrimaryProfile& p, std::int64_t m) {
    if (m < 0 || m > p.k_max()) throw std::invalid_argument("rows_of_type: m out of range");
    if (m == 0) return 1;
    return big_pow(p.a, sum_min(p, m)) - big_pow(p.a, sum_min(p, m - 1));
}

enum class PrimaryVariant { basic, factored_min, factored_kappa, poly_grouped, nested };

namespace detail {

inline bigint defect_primary_basic(const PrimaryProfile& p) {
    // Sum over element orders: (N / a^m) * #elements of order a^m.
    const bigint n = p.n();
    bigint d = 0;
    for (std::int64_t m = 0; m <= p.k_max(); ++m)
        d += (n / big_pow(p.a, m)) * rows_of_type(p, m);
    return d;
}

inline bigint defect_primary_factored_min(const PrimaryProfile& p) {
    const std::int64_t kmax = p.k_max();
    if (kmax == 0) return 1;
    const bigint n = p.n();
    // sum_min(p, m) >= m for m <= kmax (some k_x >= m), so the exponent below
    // is never negative.
    bigint inner = 1;
    for (std::int64_t m = 1; m <= kmax; ++m) inner += big_pow(p.a, sum_min(p, m) - m);
    return (n / p.a) * ((p.a - 1) * inner + big_pow(p.a, p.k_sum() - kmax));
}

inline bigint defect_primary_factored_kappa(const PrimaryProfile& p) {
    const std::int64_t kmax = p.k_max();
    if (kmax == 0) return 1;
    const std::int64_t s = static_cast<std::int64_t>(p.s());
    const bigint n = p.n();
    bigint inner = 1;
    for (std::int64_t m = 1; m <= kmax; ++m) {
        std::int64_t e = s * m;
        for (std::int64_t l = 1; l <= m; ++l) e -= kappa_below(p, l) + 1;
        inner += big_pow(p.a, e);
    }
    return (n / p.a) * ((p.a - 1) * inner + big_pow(p.a, p.k_sum() - kmax));
}

inline bigint defect_primary_poly_grouped(const PrimaryProfile& p) {
    const std::int64_t kmax = p.k_max();
    if (kmax == 0) return 1;
    const bigint n = p.n();

    // Distinct nonzero exponents in increasing order.
    std::vector<std::int64_t> distinct;
    for (std::int64_t k : p.ks)
        if (k > 0) distinct.push_back(k);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    const std::int64_t s = static_cast<std::int64_t>(p.s());
    auto poly = [&](std::int64_t ka, std::int64_t kb) -> bigint {
        // Geometric block covering exponent levels ka < m <= kb.
        const std::int64_t e = s - kappa_below(p, kb) - 1;
        std::int64_t low_sum = 0;
        for (std::int64_t k : p.ks)
            if (k <= ka) low_sum += k;
        bigint geo = 0;
        for (std::int64_t d = 0; d < kb - ka; ++d) geo += big_pow(p.a, e * d);
        return big_pow(p.a, e * (ka + 1) + low_sum) * geo;
    };

    bigint inner = 1;
    std::int64_t prev = 0;
    for (std::int64_t kb : distinct) {
        inner += poly(prev, kb);
        prev = kb;
    }
    return (n / p.a) * ((p.a - 1) * inner + big_pow(p.a, p.k_sum() - kmax));
}

inline bigint defect_primary_nested(const PrimaryProfile& p) {
    const std::int64_t kmax = p.k_max();
    if (kmax == 0) return 1;
    const std::int64_t s = static_cast<std::int64_t>(p.s());
    const bigint n = p.n();
    bigint val = 1 + big_pow(p.a, s - (kappa_below(p, kmax) + 1));
    for (std::int64_t m = kmax - 1; m >= 1; --m)
        val = 1 + big_pow(p.a, s - (kappa_below(p, m) + 1)) * val;
    std::int64_t tail = s * kmax;
    for (std::int64_t l = 1; l <= kmax; ++l) tail -= kappa_below(p, l) + 1;
    return (n / p.a) * ((p.a - 1) * val + big_pow(p.a, tail));
}

} // namespace detail

/// Undephased defect of a primary Kronecker product; all variants agree.
inline bigint defect_primary(const PrimaryProfile& p,
                             PrimaryVariant v = PrimaryVariant::basic) {
    switch (v) {
        case PrimaryVariant::basic: return detail::defect_primary_basic(p);
        case PrimaryVariant::factored_min: return detail::defect_primary_factored_min(p);
        case PrimaryVariant::factored_kappa: return detail::defect_primary_factored_kappa(p);
        case PrimaryVariant::poly_grouped: return detail::defect_primary_poly_grouped(p);
        case PrimaryVariant::nested: return detail::defect_primary_nested(p);
    }
    throw std::invalid_argument("defect_primary: unknown variant");
}

/// Dephased defect d = D - (2n - 1); requires the trivial lower bound to hold.
inline bigint dephased_defect(const bigint& undephased, const bigint& n) {
    if (undephased < 2 * n - 1)
        throw std::invalid_argument("dephased_defect: undephased defect below 2n-1");
    return undephased - (2 * n - 1);
}

/// Closed-form undephased defect of the Fourier matrix of G: product over prime blocks.
inline bigint defect_fourier(const AbelianGroup& g) {
    bigint d = 1;
    for (const auto& [prime, ks] : canonical_form(g))
        d *= defect_primary(PrimaryProfile(prime, ks));
    return d;
}

/// Cyclic-case formula D(F_N) = N * prod_k (n_k + 1 - n_k / a_k) over N = prod a_k^{n_k}.
inline bigint defect_cyclic(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("defect_cyclic: N must be positive");
    bigint num = n, den = 1, prod = 1;
    std::int64_t rest = n;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        std::int64_t k = 0;
        while (rest % p == 0) { rest /= p; ++k; }
        prod *= bigint(k) * p + p - k;  // p * (k + 1 - k/p) cleared of the denominator
        den *= p;
    }
    if (rest > 1) { prod *= bigint(1) * rest + rest - 1; den *= rest; }
    const bigint d = num * prod / den;
    if (num * prod % den != 0) throw consistency_error("defect_cyclic: non-integer result");
    return d;
}

/// Order-sum formula: D(F) = sum over group elements of N / ord(element).
inline bigint defect_order_sum(const AbelianGroup& g) {
    bigint d = 0;
    for (std::int64_t i = 0; i < g.order(); ++i)
        d += bigint(g.order()) / element_order(g, g.element_at(i));
    return d;
}

/// (N/a divides D, (a-1)^2 divides d); both hold for every primary profile.
inline std::pair<bool, bool> divisibility_check(const PrimaryProfile& p) {
    if (p.k_max() == 0)
        throw std::invalid_argument("divisibility_check: requires a nontrivial profile");
    const bigint d_bar = defect_primary(p);
    const bigint d = dephased_defect(d_bar, p.n());
    const bigint n_over_a = p.n() / p.a;
    const bigint sq = bigint(p.a - 1) * (p.a - 1);
    return {d_bar % n_over_a == 0, d % sq == 0};
}

/// Kronecker lower bound for products of DFT factors of the given sizes.
inline bigint kron_lower_bound(const std::vector<std::int64_t>& sizes) {
    bigint bound = 1;
    std::int64_t twos = 0;
    for (std::int64_t n : sizes) {
        if (n < 2) throw std::invalid_argument("kron_lower_bound: sizes must be >= 2");
        if (n == 2) ++twos;
        else bound *= 2 * n - 1;
    }
    if (twos > 0) bound *= big_pow(2, twos - 1) * (big_pow(2, twos) + 1);
    return bound;
}

/// Narrows a big integer into 64 bits, raising a capacity error on overflow.
inline std::int64_t to_int64(const bigint& v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw capacity_error("value exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}

/// How a defect value was obtained.
enum class DefectMethod { kernel_berezin, linear_system, exact_count, closed_form };

inline const char* method_name(DefectMethod m) {
    switch (m) {
        case DefectMethod::kernel_berezin: return "kernel-berezin";
        case DefectMethod::linear_system: return "linear-system";
        case DefectMethod::exact_count: return "exact-count";
        case DefectMethod::closed_form: return "closed-form";
    }
    return "?";
}

/// Result record: undephased defect, dephased defect, provenance, tolerance.
struct DefectReport {
    std::int64_t n = 0;
    std::int64_t undephased = 0;
    std::int64_t dephased = 0;
    DefectMethod method = DefectMethod::closed_form;
    double tolerance = 0.0;
    bool pivot_gap_warning = false;
};

/// Closed-form report for the Fourier matrix of G.
inline DefectReport defect_fourier_report(const AbelianGroup& g) {
    const bigint d_bar = defect_fourier(g);
    DefectReport r;
    r.n = g.order();
    r.undephased = to_int64(d_bar);
    r.dephased = to_int64(dephased_defect(d_bar, g.order()));
    r.method = DefectMethod::closed_form;
    return r;
}

} // namespace udefect
