#pragma once

/**
 * @brief Symbolic defect polynomials in the prime a, and the defect catalogue
 * of inequivalent Fourier matrices by size.
 */

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "udefect/abelian.hpp"
#include "udefect/defectcalc.hpp"
#include "udefect/errors.hpp"

namespace udefect {

/// Exact integer polynomial, coefficients in ascending degree, no trailing zeros.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<bigint> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPolynomial monomial(const bigint& coeff, std::size_t degree) {
        std::vector<bigint> c(degree + 1, bigint(0));
        c[degree] = coeff;
        return IntPolynomial(std::move(c));
    }

    const std::vector<bigint>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }

    bigint coeff(std::size_t k) const { return k < c_.size() ? c_[k] : bigint(0); }

    bigint evaluate(const bigint& a) const {
        bigint v = 0;
        for (std::size_t k = c_.size(); k-- > 0;) v = v * a + c_[k];
        return v;
    }

    friend IntPolynomial operator+(const IntPolynomial& p, const IntPolynomial& q) {
        std::vector<bigint> c(std::max(p.c_.size(), q.c_.size()), bigint(0));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = p.coeff(k) + q.coeff(k);
        return IntPolynomial(std::move(c));
    }

    friend IntPolynomial operator-(const IntPolynomial& p, const IntPolynomial& q) {
        std::vector<bigint> c(std::max(p.c_.size(), q.c_.size()), bigint(0));
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = p.coeff(k) - q.coeff(k);
        return IntPolynomial(std::move(c));
    }

    friend IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q) {
        if (p.is_zero() || q.is_zero()) return IntPolynomial();
        std::vector<bigint> c(p.c_.size() + q.c_.size() - 1, bigint(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i)
            for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
        return IntPolynomial(std::move(c));
    }

    /// Exact division; throws when the remainder is nonzero.
    IntPolynomial div_exact(const IntPolynomial& d) const {
        if (d.is_zero()) throw std::invalid_argument("IntPolynomial: division by zero");
        std::vector<bigint> rem = c_;
        std::vector<bigint> quo;
        const std::size_t dd = d.degree();
        while (rem.size() >= d.c_.size() && !(rem.size() == 1 && rem[0] == 0)) {
            const std::size_t shift = rem.size() - 1 - dd;
            if (rem.back() % d.c_.back() != 0)
                throw consistency_error("IntPolynomial: inexact division");
            const bigint q = rem.back() / d.c_.back();
            if (quo.size() < shift + 1) quo.resize(shift + 1, bigint(0));
            quo[shift] = q;
            for (std::size_t k = 0; k < d.c_.size(); ++k) rem[shift + k] -= q * d.c_[k];
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
            if (rem.empty()) break;
        }
        for (const bigint& r : rem)
            if (r != 0) throw consistency_error("IntPolynomial: nonzero remainder");
        return IntPolynomial(std::move(quo));
    }

    friend bool operator==(const IntPolynomial& p, const IntPolynomial& q) {
        return p.c_ == q.c_;
    }

    /// Human-readable form, descending powers (e.g. "2a^2 + 2a + 1").
    std::string str(const std::string& var = "a") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const bigint& ck = c_[k];
            if (ck == 0) continue;
            bigint mag = ck < 0 ? bigint(-ck) : ck;
            if (first) {
                if (ck < 0) os << "-";
                first = false;
            } else {
                os << (ck < 0 ? " - " : " + ");
            }
            if (mag != 1 || k == 0) os << mag.str();
            if (k >= 1) {
                os << var;
                if (k >= 2) os << "^" << k;
            }
        }
        if (first) return "0";
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<bigint> c_;
};

/// Non-increasing list of positive integers.
struct Partition {
    std::vector<std::int64_t> parts;

    explicit Partition(std::vector<std::int64_t> p) : parts(std::move(p)) {
        if (parts.empty()) throw std::invalid_argument("Partition: empty");
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] < 1) throw std::invalid_argument("Partition: parts must be positive");
            if (i > 0 && parts[i] > parts[i - 1])
                throw std::invalid_argument("Partition: parts must be non-increasing");
        }
    }

    std::int64_t sum() const {
        std::int64_t s = 0;
        for (std::int64_t p : parts) s += p;
        return s;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " " : "") << parts[i];
        os << "]";
        return os.str();
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
};

/// All partitions of total, parts bounded above, in descending lexicographic order.
inline void partitions_of(std::int64_t total, std::int64_t max_part,
                          std::vector<std::int64_t>& prefix,
                          std::vector<Partition>& out) {
    if (total == 0) {
        out.push_back(Partition(prefix));
        return;
    }
    for (std::int64_t first = std::min(total, max_part); first >= 1; --first) {
        prefix.push_back(first);
        partitions_of(total - first, first, prefix, out);
        prefix.pop_back();
    }
}

inline std::vector<Partition> partitions_of(std::int64_t total) {
    std::vector<Partition> out;
    std::vector<std::int64_t> prefix;
    partitions_of(total, total, prefix, out);
    return out;
}

/**
 * @brief Symbolic factored defects of the primary product described by a partition.
 *
 * Returns ((a/N) * D as a polynomial in a,  d / (a-1)^2 as a polynomial in a),
 * where N = a^{sum}, D is the undephased and d the dephased defect.  Both
 * divisions are exact; a nonzero remainder signals an internal error.
 */
inline std::pair<IntPolynomial, IntPolynomial> defect_polynomials(const Partition& p) {
    const std::int64_t ksum = p.sum();
    const std::int64_t kmax = p.parts.front();
    auto smin = [&](std::int64_t m) {
        std::int64_t s = 0;
        for (std::int64_t k : p.parts) s += std::min(k, m);
        return s;
    };

    // Undephased defect as a polynomial in a:
    // a^{ksum} + sum_{m=1..kmax} (a^{ksum-m+smin(m)} - a^{ksum-m+smin(m-1)}).
    IntPolynomial d_bar = IntPolynomial::monomial(1, static_cast<std::size_t>(ksum));
    for (std::int64_t m = 1; m <= kmax; ++m) {
        d_bar = d_bar + IntPolynomial::monomial(1, static_cast<std::size_t>(ksum - m + smin(m)));
        d_bar = d_bar - IntPolynomial::monomial(1, static_cast<std::size_t>(ksum - m + smin(m - 1)));
    }

    const IntPolynomial first =
        d_bar.div_exact(IntPolynomial::monomial(1, static_cast<std::size_t>(ksum - 1)));

    // d = D - (2 a^{ksum} - 1), then divide by (a-1)^2.
    IntPolynomial d = d_bar - IntPolynomial::monomial(2, static_cast<std::size_t>(ksum)) +
                      IntPolynomial({bigint(1)});
    const IntPolynomial a_minus_1_sq({bigint(1), bigint(-2), bigint(1)});
    const IntPolynomial second = d.is_zero() ? IntPolynomial() : d.div_exact(a_minus_1_sq);

    return {first, second};
}

struct Table1Row {
    Partition partition;
    IntPolynomial undephased_over_monomial;  ///< (a/N) * D
    IntPolynomial dephased_over_square;      ///< d / (a-1)^2
};

/// Rows for all partitions with total 1..max_sum, totals ascending, parts descending-lex.
inline std::vector<Table1Row> table1(std::int64_t max_sum) {
    if (max_sum < 1) throw std::invalid_argument("table1: max_sum must be >= 1");
    std::vector<Table1Row> rows;
    for (std::int64_t total = 1; total <= max_sum; ++total)
        for (const Partition& p : partitions_of(total)) {
            auto [first, second] = defect_polynomials(p);
            rows.push_back({p, std::move(first), std::move(second)});
        }
    return rows;
}

struct Table2Row {
    std::int64_t n;
    std::string descriptor;  ///< e.g. "2^[2 1] 3^[1 1]"
    std::int64_t undephased;
    std::int64_t dephased;
};

namespace detail {

inline void table2_for_n(std::int64_t n, std::vector<Table2Row>& out) {
    // Factor n and collect per-prime partition choices.
    std::vector<std::pair<std::int64_t, std::int64_t>> factors;  // (prime, exponent)
    std::int64_t rest = n;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        std::int64_t k = 0;
        while (rest % p == 0) { rest /= p; ++k; }
        factors.emplace_back(p, k);
    }
    if (rest > 1) factors.emplace_back(rest, 1);

    if (factors.empty()) {  // n == 1
        out.push_back({1, "1", 1, 0});
        return;
    }

    std::vector<std::vector<Partition>> choices;
    for (const auto& [p, k] : factors) choices.push_back(partitions_of(k));

    std::vector<std::size_t> pick(choices.size(), 0);
    for (;;) {
        std::vector<std::int64_t> orders;
        std::ostringstream desc;
        for (std::size_t x = 0; x < choices.size(); ++x) {
            const Partition& part = choices[x][pick[x]];
            for (std::int64_t k : part.parts) {
                std::int64_t f = 1;
                for (std::int64_t e = 0; e < k; ++e) f *= factors[x].first;
                orders.push_back(f);
            }
            if (x) desc << " ";
            desc << factors[x].first << "^" << part.str();
        }
        const AbelianGroup g(orders);
        const bigint d_bar = defect_fourier(g);
        out.push_back({n, desc.str(), to_int64(d_bar),
                       to_int64(dephased_defect(d_bar, g.order()))});

        std::size_t x = pick.size();
        bool done = true;
        while (x-- > 0) {
            if (++pick[x] < choices[x].size()) { done = false; break; }
            pick[x] = 0;
        }
        if (done) break;
    }
}

} // namespace detail

/// Defect catalogue: one row per isomorphism class of abelian groups of each order <= max_n.
inline std::vector<Table2Row> table2(std::int64_t max_n) {
    if (max_n < 1) throw std::invalid_argument("table2: max_n must be >= 1");
    std::vector<Table2Row> rows;
    for (std::int64_t n = 1; n <= max_n; ++n) detail::table2_for_n(n, rows);
    return rows;
}

} // namespace udefect
