#pragma once

/**
 * @brief Finite abelian group arithmetic for matrix indexing groups.
 *
 * Groups are direct products Z_{N_1} x ... x Z_{N_r}; elements are tuples of
 * residues.  Ordinal positions follow the lexicographic order of the tuples,
 * which is the row/column convention used throughout the library.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "udefect/errors.hpp"

namespace udefect {

/// Residue tuple representing one group element.
using GroupElement = std::vector<std::int64_t>;

class AbelianGroup {
public:
    explicit AbelianGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
        if (orders_.empty()) throw std::invalid_argument("AbelianGroup: empty factor list");
        order_ = 1;
        exponent_ = 1;
        for (std::int64_t n : orders_) {
            if (n < 1) throw std::invalid_argument("AbelianGroup: factor order must be >= 1");
            order_ *= n;
            exponent_ = std::lcm(exponent_, n);
        }
    }

    const std::vector<std::int64_t>& orders() const { return orders_; }
    std::int64_t order() const { return order_; }
    std::int64_t exponent() const { return exponent_; }
    std::size_t num_factors() const { return orders_.size(); }

    GroupElement zero() const { return GroupElement(orders_.size(), 0); }

    bool valid(const GroupElement& g) const {
        if (g.size() != orders_.size()) return false;
        for (std::size_t x = 0; x < g.size(); ++x)
            if (g[x] < 0 || g[x] >= orders_[x]) return false;
        return true;
    }

    void require_valid(const GroupElement& g) const {
        if (!valid(g)) throw std::invalid_argument("group element out of range");
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        require_valid(a);
        require_valid(b);
        GroupElement r(orders_.size());
        for (std::size_t x = 0; x < orders_.size(); ++x) r[x] = (a[x] + b[x]) % orders_[x];
        return r;
    }

    GroupElement neg(const GroupElement& a) const {
        require_valid(a);
        GroupElement r(orders_.size());
        for (std::size_t x = 0; x < orders_.size(); ++x) r[x] = (orders_[x] - a[x]) % orders_[x];
        return r;
    }

    GroupElement scale(std::int64_t k, const GroupElement& a) const {
        require_valid(a);
        GroupElement r(orders_.size());
        for (std::size_t x = 0; x < orders_.size(); ++x) {
            std::int64_t v = (a[x] * (k % orders_[x])) % orders_[x];
            if (v < 0) v += orders_[x];
            r[x] = v;
        }
        return r;
    }

    /// Ordinal position of g in lexicographic element order.
    std::int64_t index_of(const GroupElement& g) const {
        require_valid(g);
        std::int64_t idx = 0;
        for (std::size_t x = 0; x < orders_.size(); ++x) idx = idx * orders_[x] + g[x];
        return idx;
    }

    /// Element at lexicographic ordinal position idx.
    GroupElement element_at(std::int64_t idx) const {
        if (idx < 0 || idx >= order_) throw std::invalid_argument("element index out of range");
        GroupElement g(orders_.size());
        for (std::size_t x = orders_.size(); x-- > 0;) {
            g[x] = idx % orders_[x];
            idx /= orders_[x];
        }
        return g;
    }

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
        return a.orders_ == b.orders_;
    }

private:
    std::vector<std::int64_t> orders_;
    std::int64_t order_ = 1;
    std::int64_t exponent_ = 1;
};

inline AbelianGroup group_new(std::vector<std::int64_t> orders) {
    return AbelianGroup(std::move(orders));
}

/// Smallest positive k with k*g = 0.
inline std::int64_t element_order(const AbelianGroup& g, const GroupElement& e) {
    g.require_valid(e);
    std::int64_t ord = 1;
    for (std::size_t x = 0; x < e.size(); ++x) {
        const std::int64_t n = g.orders()[x];
        ord = std::lcm(ord, n / std::gcd(n, e[x]));
    }
    return ord;
}

/// Per-prime exponent lists: [(prime, ascending exponents), ...], primes ascending.
using CanonicalForm = std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>>;

/**
 * @brief Primary decomposition of the group, used as the isomorphism invariant.
 *
 * Each factor order is split into prime powers; trivial factors vanish.  Two
 * groups are isomorphic exactly when their canonical forms are equal.
 */
inline CanonicalForm canonical_form(const AbelianGroup& g) {
    std::map<std::int64_t, std::vector<std::int64_t>> acc;
    for (std::int64_t n : g.orders()) {
        for (std::int64_t p = 2; p * p <= n; ++p) {
            if (n % p != 0) continue;
            std::int64_t k = 0;
            while (n % p == 0) { n /= p; ++k; }
            acc[p].push_back(k);
        }
        if (n > 1) acc[n].push_back(1);
    }
    CanonicalForm out;
    for (auto& [p, ks] : acc) {
        std::sort(ks.begin(), ks.end());
        out.emplace_back(p, ks);
    }
    return out;
}

inline bool groups_isomorphic(const AbelianGroup& g, const AbelianGroup& h) {
    return canonical_form(g) == canonical_form(h);
}

/// Bijective homomorphism between two groups, stored as a full ordinal table.
class GroupIsomorphism {
public:
    GroupIsomorphism(AbelianGroup source, AbelianGroup target, std::vector<std::int64_t> table)
        : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
        if (static_cast<std::int64_t>(table_.size()) != source_.order())
            throw std::invalid_argument("GroupIsomorphism: table size mismatch");
    }

    static GroupIsomorphism identity(const AbelianGroup& g) {
        std::vector<std::int64_t> t(static_cast<std::size_t>(g.order()));
        std::iota(t.begin(), t.end(), 0);
        return GroupIsomorphism(g, g, std::move(t));
    }

    const AbelianGroup& source() const { return source_; }
    const AbelianGroup& target() const { return target_; }
    const std::vector<std::int64_t>& table() const { return table_; }

    GroupElement apply(const GroupElement& g) const {
        return target_.element_at(table_[static_cast<std::size_t>(source_.index_of(g))]);
    }

    std::int64_t apply_index(std::int64_t i) const { return table_[static_cast<std::size_t>(i)]; }

    GroupIsomorphism inverse() const {
        std::vector<std::int64_t> inv(table_.size());
        for (std::size_t i = 0; i < table_.size(); ++i)
            inv[static_cast<std::size_t>(table_[i])] = static_cast<std::int64_t>(i);
        return GroupIsomorphism(target_, source_, std::move(inv));
    }

    /// Composition: (a.compose(b))(x) = a(b(x)).
    GroupIsomorphism compose(const GroupIsomorphism& b) const {
        std::vector<std::int64_t> t(b.table_.size());
        for (std::size_t i = 0; i < b.table_.size(); ++i)
            t[i] = table_[static_cast<std::size_t>(b.table_[i])];
        return GroupIsomorphism(b.source_, target_, std::move(t));
    }

    /// Exhaustive additivity-and-bijectivity verification (small orders).
    bool verify() const {
        const std::int64_t n = source_.order();
        if (target_.order() != n) return false;
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (std::int64_t i = 0; i < n; ++i) {
            const std::int64_t v = table_[static_cast<std::size_t>(i)];
            if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = true;
        }
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = 0; j < n; ++j) {
                const GroupElement sum = source_.add(source_.element_at(i), source_.element_at(j));
                const GroupElement lhs = apply(sum);
                const GroupElement rhs =
                    target_.add(apply(source_.element_at(i)), apply(source_.element_at(j)));
                if (lhs != rhs) return false;
            }
        return true;
    }

    friend bool operator==(const GroupIsomorphism& a, const GroupIsomorphism& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.table_ == b.table_;
    }

private:
    AbelianGroup source_;
    AbelianGroup target_;
    std::vector<std::int64_t> table_;
};

namespace detail {

/// Expands generator images into a full ordinal table; empty when not bijective.
inline std::optional<std::vector<std::int64_t>> table_from_generator_images(
    const AbelianGroup& g, const AbelianGroup& h, const std::vector<GroupElement>& images) {
    const std::int64_t n = g.order();
    std::vector<std::int64_t> table(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (std::int64_t i = 0; i < n; ++i) {
        const GroupElement src = g.element_at(i);
        GroupElement img = h.zero();
        for (std::size_t x = 0; x < images.size(); ++x)
            img = h.add(img, h.scale(src[x], images[x]));
        const std::int64_t v = h.index_of(img);
        if (seen[static_cast<std::size_t>(v)]) return std::nullopt;
        seen[static_cast<std::size_t>(v)] = true;
        table[static_cast<std::size_t>(i)] = v;
    }
    return table;
}

} // namespace detail

/**
 * @brief All isomorphisms G -> H by brute force over generator images.
 *
 * The image of each standard generator e_x (order N_x) ranges over the
 * elements of H whose order divides N_x; a candidate tuple extends to a
 * homomorphism by linearity and is kept when the induced table is bijective.
 * Orders above the cap — and candidate spaces too large to sweep — raise a
 * capacity error.
 */
inline std::vector<GroupIsomorphism> isomorphisms_between(const AbelianGroup& g,
                                                          const AbelianGroup& h,
                                                          std::int64_t order_cap = 64) {
    if (g.order() != h.order()) return {};
    if (g.order() > order_cap)
        throw capacity_error("isomorphism enumeration capped at order " +
                             std::to_string(order_cap));

    const std::int64_t n = h.order();
    std::vector<std::vector<GroupElement>> candidates;
    std::uint64_t work = 1;
    for (std::size_t x = 0; x < g.num_factors(); ++x) {
        std::vector<GroupElement> cs;
        for (std::int64_t j = 0; j < n; ++j) {
            const GroupElement e = h.element_at(j);
            if (g.orders()[x] % element_order(h, e) == 0) cs.push_back(e);
        }
        work *= static_cast<std::uint64_t>(cs.size());
        if (work > (1u << 22))
            throw capacity_error("isomorphism enumeration: candidate space too large");
        candidates.push_back(std::move(cs));
    }

    std::vector<GroupIsomorphism> out;
    std::vector<GroupElement> images(g.num_factors(), h.zero());
    std::vector<std::size_t> pick(g.num_factors(), 0);
    for (;;) {
        for (std::size_t x = 0; x < pick.size(); ++x) images[x] = candidates[x][pick[x]];
        if (auto table = detail::table_from_generator_images(g, h, images))
            out.emplace_back(g, h, std::move(*table));
        std::size_t x = pick.size();
        while (x-- > 0) {
            if (++pick[x] < candidates[x].size()) break;
            pick[x] = 0;
            if (x == 0) return out;
        }
    }
}

/// Map element-order -> number of elements of that order.
inline std::map<std::int64_t, std::int64_t> order_census(const AbelianGroup& g) {
    std::map<std::int64_t, std::int64_t> census;
    for (std::int64_t i = 0; i < g.order(); ++i) ++census[element_order(g, g.element_at(i))];
    return census;
}

} // namespace udefect
