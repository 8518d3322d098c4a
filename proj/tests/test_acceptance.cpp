#include <catch_amalgamated.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "udefect/udefect.hpp"
#include "test_util.hpp"

using namespace udefect;
using testutil::random_enphased_perm;
using testutil::random_zero_free_unitary;

namespace {

/// Runs one acceptance criterion and prints a single PASS/FAIL line.
void criterion(int num, const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (") + e.what() + ")";
    }
    std::cout << "ACCEPTANCE " << num << " " << name << ": " << (ok ? "PASS" : "FAIL") << note
              << std::endl;
    REQUIRE(ok);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

IntPolynomial poly(std::vector<long long> asc) {
    std::vector<bigint> c(asc.begin(), asc.end());
    return IntPolynomial(std::move(c));
}

IntPolynomial product(const std::vector<std::vector<long long>>& factors) {
    IntPolynomial r({bigint(1)});
    for (const auto& f : factors) r = r * poly(std::vector<long long>(f));
    return r;
}

struct RefRow {
    std::vector<std::int64_t> parts;
    std::vector<std::vector<long long>> first;
    std::vector<std::vector<long long>> second;  // empty -> zero polynomial
};

// The 29 printed rows for partition totals 1..6, in table order; coefficients
// ascending per factor.
const std::vector<RefRow> kReferenceRows = {
    {{1}, {{-1, 2}}, {}},
    {{2}, {{-2, 3}}, {{1}}},
    {{1, 1}, {{-1, 1, 1}}, {{1, 1}}},
    {{3}, {{-3, 4}}, {{1, 2}}},
    {{2, 1}, {{-1, 0, 2}}, {{1, 2, 2}}},
    {{1, 1, 1}, {{-1, 1, 0, 1}}, {{1, 1}, {1, 1, 1}}},
    {{4}, {{-4, 5}}, {{1, 2, 3}}},
    {{3, 1}, {{-1, -1, 3}}, {{1, 2, 3, 3}}},
    {{2, 2}, {{-1, 0, 1, 1}}, {{1, 1}, {1, 1, 2, 1}}},
    {{2, 1, 1}, {{-1, 1, -1, 2}}, {{1, 2, 3, 3, 2}}},
    {{1, 1, 1, 1}, {{-1, 1, 0, 0, 1}}, {{1, 1}, {1, 0, 1}, {1, 1, 1}}},
    {{5}, {{-5, 6}}, {{1, 2, 3, 4}}},
    {{4, 1}, {{-1, -2, 4}}, {{1, 2, 3, 4, 4}}},
    {{3, 2}, {{-1, 0, 0, 2}}, {{1, 1}, {1, 1, 2, 2, 2}}},
    {{3, 1, 1}, {{-1, 1, -2, 3}}, {{1, 2, 3, 4, 4, 3}}},
    {{2, 2, 1}, {{-1, 1, -1, 1, 1}}, {{1, 1}, {1, 1, 1}, {1, 0, 1, 1}}},
    {{2, 1, 1, 1}, {{-1, 1, 0, -1, 2}}, {{1, 2, 3, 4, 4, 3, 2}}},
    {{1, 1, 1, 1, 1},
     {{1, -1, 1}, {-1, 0, 1, 1}},
     {{1, 1}, {1, 0, 1}, {1, 1, 1, 1, 1}}},
    {{6}, {{-6, 7}}, {{1, 2, 3, 4, 5}}},
    {{5, 1}, {{-1, -3, 5}}, {{1, 2, 3, 4, 5, 5}}},
    {{4, 2}, {{-1, 0, -1, 3}}, {{1, 2, 3, 4, 5, 5, 3}}},
    {{4, 1, 1}, {{-1, 1, -3, 4}}, {{1, 2, 3, 4, 5, 5, 4}}},
    {{3, 3}, {{-1, 0, 0, 1, 1}}, {{1, 1}, {1, 1, 1}, {1, 0, 1, 1, 1}}},
    {{3, 2, 1}, {{-1, 1, -1, 0, 2}}, {{1, 1}, {1, 1, 2, 2, 3, 2, 2}}},
    {{3, 1, 1, 1}, {{-1, 1, 0, -2, 3}}, {{1, 2, 3, 4, 5, 5, 4, 3}}},
    {{2, 2, 2}, {{-1, 1, -1, 1, 0, 1}}, {{1, 1, 1}, {1, 1, 1, 2, 2, 1, 1}}},
    {{2, 2, 1, 1},
     {{-1, 1, 0, -1, 1, 1}},
     {{1, 1}, {1, 0, 1}, {1, 1, 1, 1, 2, 1}}},
    {{2, 1, 1, 1, 1}, {{-1, 1, 0, 0, -1, 2}}, {{1, 2, 3, 4, 5, 5, 4, 3, 2}}},
    {{1, 1, 1, 1, 1, 1},
     {{-1, 1, 0, 0, 0, 0, 1}},
     {{1, 1}, {1, 1, 1}, {1, -1, 1}, {1, 1, 1, 1, 1}}},
};

/// Factor-order lists for every abelian group class of each order 1..max_n.
std::vector<std::vector<std::int64_t>> group_classes_up_to(std::int64_t max_n) {
    std::vector<std::vector<std::int64_t>> out;
    for (std::int64_t n = 1; n <= max_n; ++n) {
        std::vector<std::pair<std::int64_t, std::int64_t>> factors;
        std::int64_t rest = n;
        for (std::int64_t p = 2; p * p <= rest; ++p) {
            if (rest % p != 0) continue;
            std::int64_t k = 0;
            while (rest % p == 0) { rest /= p; ++k; }
            factors.emplace_back(p, k);
        }
        if (rest > 1) factors.emplace_back(rest, 1);
        if (factors.empty()) {
            out.push_back({1});
            continue;
        }
        std::vector<std::vector<Partition>> choices;
        for (const auto& [p, k] : factors) choices.push_back(partitions_of(k));
        std::vector<std::size_t> pick(choices.size(), 0);
        for (;;) {
            std::vector<std::int64_t> orders;
            for (std::size_t x = 0; x < choices.size(); ++x)
                for (std::int64_t k : choices[x][pick[x]].parts) {
                    std::int64_t f = 1;
                    for (std::int64_t e = 0; e < k; ++e) f *= factors[x].first;
                    orders.push_back(f);
                }
            out.push_back(std::move(orders));
            std::size_t x = pick.size();
            bool done = true;
            while (x-- > 0) {
                if (++pick[x] < choices[x].size()) { done = false; break; }
                pick[x] = 0;
            }
            if (done) break;
        }
    }
    return out;
}

ComplexMatrix rotation(double t) {
    ComplexMatrix m(2, 2);
    m(0, 0) = std::cos(t);
    m(0, 1) = -std::sin(t);
    m(1, 0) = std::sin(t);
    m(1, 1) = std::cos(t);
    return m;
}

} // namespace

TEST_CASE("criterion 1: polynomial table regression") {
    criterion(1, "polynomial table rows exact", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rows = table1(6);
        if (rows.size() != kReferenceRows.size()) return false;
        bool ok = true;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            ok = ok && rows[i].partition.parts == kReferenceRows[i].parts;
            ok = ok && rows[i].undephased_over_monomial == product(kReferenceRows[i].first);
            const IntPolynomial want_second = kReferenceRows[i].second.empty()
                                                  ? IntPolynomial()
                                                  : product(kReferenceRows[i].second);
            ok = ok && rows[i].dephased_over_square == want_second;
        }
        // Worked spot check: [2 1] -> (2a^2 - 1, 2a^2 + 2a + 1).
        const auto [f21, s21] = defect_polynomials(Partition({2, 1}));
        ok = ok && f21 == poly({-1, 0, 2}) && s21 == poly({1, 2, 2});
        return ok && seconds_since(t0) < 1.0;
    });
}

TEST_CASE("criterion 2: worked example by five methods") {
    criterion(2, "size-8 worked example equals 28 by all methods", [] {
        const auto t0 = std::chrono::steady_clock::now();
        const AbelianGroup g({2, 4});
        const ExactFourierMatrix f = fourier_matrix(g);
        const ComplexMatrix u = to_complex(f, true);
        bool ok = defect_fourier(g) == 28;
        ok = ok && count_ones(f) == 28;
        ok = ok && defect_order_sum(g) == 28;
        ok = ok && defect_kernel_berezin(u).undephased == 28;
        ok = ok && defect_linear_system(u).undephased == 28;
        return ok && seconds_since(t0) < 5.0;
    });
}

TEST_CASE("criterion 3: cyclic formula vs exact count") {
    criterion(3, "cyclic closed form equals exact count to size 100", [] {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        for (std::int64_t n = 1; n <= 100; ++n)
            ok = ok && defect_cyclic(n) == count_ones(fourier_matrix(AbelianGroup({n})));
        return ok && seconds_since(t0) < 60.0;
    });
}

TEST_CASE("criterion 4: multiplicativity") {
    criterion(4, "multiplicative over coprime sizes, strict otherwise", [] {
        bool ok = true;
        for (std::int64_t a = 2; a <= 58; ++a)
            for (std::int64_t b = a + 1; a * b <= 60; ++b) {
                if (std::gcd(a, b) != 1) continue;
                ok = ok && defect_fourier(AbelianGroup({a, b})) ==
                               defect_fourier(AbelianGroup({a})) *
                                   defect_fourier(AbelianGroup({b}));
            }
        for (const auto& [a, b] : std::vector<std::pair<std::int64_t, std::int64_t>>{
                 {2, 2}, {2, 4}, {3, 3}, {6, 2}})
            ok = ok && defect_fourier(AbelianGroup({a, b})) >
                           defect_fourier(AbelianGroup({a})) *
                               defect_fourier(AbelianGroup({b}));
        return ok;
    });
}

TEST_CASE("criterion 5: transform trace") {
    criterion(5, "operator trace equals the size for random unitaries", [] {
        std::mt19937 rng(20260823);
        bool ok = true;
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);  // 2..8
            const ComplexMatrix u = random_zero_free_unitary(n, rng);
            const cplx tr = berezin_matrix(u).matrix.trace();
            ok = ok && std::abs(tr - cplx{double(n), 0.0}) < 1e-9 * double(n);
        }
        return ok;
    });
}

TEST_CASE("criterion 6: Fourier eigenbasis") {
    criterion(6, "column outer products are eigenvectors with root-of-unity values", [] {
        bool ok = true;
        for (const auto& orders : group_classes_up_to(12)) {
            const ExactFourierMatrix f = fourier_matrix(AbelianGroup(orders));
            const std::size_t n = static_cast<std::size_t>(f.size());
            const ComplexMatrix m = berezin_matrix(to_complex(f, true)).matrix;
            for (std::int64_t s = 0; s < f.size(); ++s)
                for (std::int64_t t = 0; t < f.size(); ++t) {
                    std::vector<cplx> x(n * n);
                    for (std::int64_t k = 0; k < f.size(); ++k)
                        for (std::int64_t l = 0; l < f.size(); ++l)
                            x[static_cast<std::size_t>(k) * n + static_cast<std::size_t>(l)] =
                                f.entry(k, s).value() * f.entry(l, t).value();
                    const cplx lambda = f.entry(s, t).value();
                    double err = 0.0;
                    for (std::size_t r = 0; r < n * n; ++r) {
                        cplx acc = 0.0;
                        for (std::size_t c = 0; c < n * n; ++c) acc += m(r, c) * x[c];
                        err = std::max(err, std::abs(acc - lambda * x[r]));
                    }
                    ok = ok && err < 1e-9;
                }
        }
        return ok;
    });
}

TEST_CASE("criterion 7: spectral structure") {
    criterion(7, "2x2 multiplicities and real-orthogonal fixed-space dimension", [] {
        std::mt19937 rng(7);
        bool ok = true;
        for (int trial = 0; trial < 10; ++trial) {
            const ComplexMatrix u = random_zero_free_unitary(2, rng);
            const ComplexMatrix m = berezin_matrix(u).matrix;
            ok = ok && 4 - rank_with_tol(m - ComplexMatrix::identity(4), 1e-9) == 3;
            ok = ok && 4 - rank_with_tol(m + ComplexMatrix::identity(4), 1e-9) == 1;
        }
        ok = ok && defect_kernel_berezin(rotation(0.7), 1e-9).undephased == 3;  // 2*3/2
        const ComplexMatrix u4 = kronecker(rotation(0.7), rotation(0.3));
        ok = ok && defect_kernel_berezin(u4, 1e-9).undephased == 10;  // 4*5/2
        return ok;
    });
}

TEST_CASE("criterion 8: equivalence invariance") {
    criterion(8, "defect invariant under enphased permutation pairs", [] {
        std::mt19937 rng(8);
        bool ok = true;
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);  // 2..6
            const ComplexMatrix u = random_zero_free_unitary(n, rng);
            const ComplexMatrix s = random_enphased_perm(n, rng);
            const ComplexMatrix t = random_enphased_perm(n, rng);
            ok = ok && defect_kernel_berezin(u).undephased ==
                           defect_kernel_berezin(s * u * t.adjoint()).undephased;
        }
        return ok;
    });
}

TEST_CASE("criterion 9: tensor law") {
    criterion(9, "operator of a Kronecker product factorizes", [] {
        std::mt19937 rng(9);
        bool ok = true;
        for (const auto& [na, nb] : std::vector<std::pair<std::size_t, std::size_t>>{
                 {2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
            const ComplexMatrix a = random_zero_free_unitary(na, rng);
            const ComplexMatrix b = random_zero_free_unitary(nb, rng);
            const ComplexMatrix mab = berezin_matrix(kronecker(a, b)).matrix;
            const ComplexMatrix ma = berezin_matrix(a).matrix;
            const ComplexMatrix mb = berezin_matrix(b).matrix;
            const std::size_t n = na * nb;
            double err = 0.0;
            for (std::size_t ia = 0; ia < na; ++ia)
                for (std::size_t ib = 0; ib < nb; ++ib)
                    for (std::size_t ja = 0; ja < na; ++ja)
                        for (std::size_t jb = 0; jb < nb; ++jb)
                            for (std::size_t ka = 0; ka < na; ++ka)
                                for (std::size_t kb = 0; kb < nb; ++kb)
                                    for (std::size_t la = 0; la < na; ++la)
                                        for (std::size_t lb = 0; lb < nb; ++lb) {
                                            const std::size_t row =
                                                (ia * nb + ib) * n + (ja * nb + jb);
                                            const std::size_t col =
                                                (ka * nb + kb) * n + (la * nb + lb);
                                            err = std::max(
                                                err,
                                                std::abs(mab(row, col) -
                                                         ma(ia * na + ja, ka * na + la) *
                                                             mb(ib * nb + jb, kb * nb + lb)));
                                        }
            ok = ok && err < 1e-10;
        }
        return ok;
    });
}

TEST_CASE("criterion 10: divisibility suite") {
    criterion(10, "both divisibility properties for all primary profiles", [] {
        bool ok = true;
        for (std::int64_t a : {2, 3, 5, 7})
            for (std::int64_t total = 1; total <= 8; ++total)
                for (const Partition& part : partitions_of(total)) {
                    const PrimaryProfile p(a, part.parts);
                    const auto [d1, d2] = divisibility_check(p);
                    ok = ok && d1 && d2;
                }
        return ok;
    });
}

TEST_CASE("criterion 11: classification examples") {
    criterion(11, "equivalence classes and verified witnesses", [] {
        const auto f8 = fourier_matrix(AbelianGroup({8}));
        const auto f24 = fourier_matrix(AbelianGroup({2, 4}));
        const auto f222 = fourier_matrix(AbelianGroup({2, 2, 2}));
        bool ok = !perm_equivalent(f8, f24).has_value();
        ok = ok && !perm_equivalent(f8, f222).has_value();
        ok = ok && !perm_equivalent(f24, f222).has_value();

        auto check_equiv = [&](std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
            const auto fa = fourier_matrix(AbelianGroup(std::move(a)));
            const auto fb = fourier_matrix(AbelianGroup(std::move(b)));
            const auto w = perm_equivalent(fa, fb);
            if (!w) return false;
            // Verify the witness by exact multiplication.
            return w->left.is_permutation() && w->right.is_permutation() &&
                   apply_pair(*w, CycloDense::from_fourier(fa)) == CycloDense::from_fourier(fb);
        };
        ok = ok && check_equiv({12}, {4, 3});
        ok = ok && check_equiv({2, 6}, {2, 2, 3});
        ok = ok && !perm_equivalent(fourier_matrix(AbelianGroup({2, 6})),
                                    fourier_matrix(AbelianGroup({12})))
                        .has_value();
        return ok;
    });
}

TEST_CASE("criterion 12: algebra suite") {
    criterion(12, "exact operator algebra, h-map laws, stabilizer data", [] {
        bool ok = true;
        const std::vector<std::vector<std::int64_t>> groups = {
            {2}, {3}, {4}, {2, 2}, {6}, {2, 4}, {3, 3}, {12}, {16}, {2, 8}};
        for (const auto& orders : groups) {
            const auto f = fourier_matrix(AbelianGroup(orders));
            const auto& g = f.group();
            const CycloDense df = CycloDense::from_fourier(f);
            for (std::int64_t ki = 0; ki < g.order(); ++ki) {
                const GroupElement k = g.element_at(ki);
                ok = ok && left_mul(w_matrix(f, k), df) ==
                               right_mul(df, z_matrix(f, k).transpose());
                ok = ok && right_mul(df, w_matrix(f, k)) == left_mul(z_matrix(f, k), df);
            }
            for (std::int64_t si = 0; si < g.order(); ++si)
                for (std::int64_t ti = 0; ti < g.order(); ++ti) {
                    const GroupElement s = g.element_at(si), t = g.element_at(ti);
                    ok = ok && z_matrix(f, s) * w_matrix(f, t) ==
                                   f.entry(s, t) * (w_matrix(f, t) * z_matrix(f, s));
                    ok = ok &&
                         left_mul(z_matrix(f, s), right_mul(df, z_matrix(f, t).transpose())) ==
                             scalar_mul(f.entry(s, t),
                                        left_mul(w_matrix(f, t),
                                                 right_mul(df, w_matrix(f, s))));
                }
        }

        // h-map involution and anti-homomorphism property.
        for (const auto& orders : {std::vector<std::int64_t>{2, 2}, {2, 4}, {3, 3}}) {
            const auto f = fourier_matrix(AbelianGroup(orders));
            const auto autos = isomorphisms_between(f.group(), f.group());
            for (const auto& rho : autos) ok = ok && h_map(f, f, h_map(f, f, rho)) == rho;
            for (const auto& a : autos)
                for (const auto& b : autos)
                    ok = ok && h_map(f, f, a.compose(b)) ==
                                   h_map(f, f, b).compose(h_map(f, f, a));
        }

        // Stabilizer pairs fix F exactly.
        for (const auto& orders : {std::vector<std::int64_t>{2, 2}, {2, 4}, {12}}) {
            const auto f = fourier_matrix(AbelianGroup(orders));
            const CycloDense df = CycloDense::from_fourier(f);
            for (const auto& p : stabilizer_perm_pairs(f))
                ok = ok && apply_pair(p, df) == df;
        }

        // The printed worked example: h-map table and stabilizing pair.
        const auto f22 = fourier_matrix(AbelianGroup({2, 2}));
        const GroupIsomorphism rho(f22.group(), f22.group(), {0, 3, 2, 1});
        const GroupIsomorphism h = h_map(f22, f22, rho);
        ok = ok && h.apply({0, 0}) == GroupElement{0, 0};
        ok = ok && h.apply({0, 1}) == GroupElement{0, 1};
        ok = ok && h.apply({1, 0}) == GroupElement{1, 1};
        ok = ok && h.apply({1, 1}) == GroupElement{1, 0};

        ExactGenPerm left(4, 2), right(4, 2);
        left.set_row(0, 0, 0);
        left.set_row(1, 3, 0);
        left.set_row(2, 2, 0);
        left.set_row(3, 1, 0);
        right.set_row(0, 0, 0);
        right.set_row(1, 1, 0);
        right.set_row(2, 3, 0);
        right.set_row(3, 2, 0);
        const auto pairs = stabilizer_perm_pairs(f22);
        ok = ok && std::count(pairs.begin(), pairs.end(),
                              ExactGeneralizedPermPair{left, right}) == 1;
        return ok;
    });
}
