/**
 * @brief Command-line interface for the unitary-defect library.
 *
 * Verbs:
 *   fourier    - defects of a Fourier matrix given its group factor orders
 *   unitary    - numeric defects of a unitary matrix loaded from a JSON file
 *   equiv      - permutation-equivalence test and witness for two Fourier matrices
 *   table      - factored-polynomial table or the defect catalogue by size
 *   stabilizer - stabilizer structure of a Fourier matrix
 *   spectrum   - eigenvalue multiset of the Berezin transform of a Fourier matrix
 *
 * Exit codes: 0 ok, 2 method disagreement, 3 zero-entry domain error,
 * 4 non-unitary input, 5 capacity exceeded, 64 usage error.
 */

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "udefect/udefect.hpp"

namespace {

using nlohmann::json;
using namespace udefect;

constexpr int kExitOk = 0;
constexpr int kExitDisagreement = 2;
constexpr int kExitZeroEntry = 3;
constexpr int kExitNonUnitary = 4;
constexpr int kExitCapacity = 5;
constexpr int kExitUsage = 64;

std::vector<std::int64_t> parse_orders(const std::string& s) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoll(item));
    }
    if (out.empty()) throw CLI::ValidationError("--orders", "no orders given");
    return out;
}

/// Writes to --output when given, stdout otherwise.
struct Sink {
    std::string path;
    std::ostringstream buf;
    int flush() {
        if (path.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream f(path, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot open output file " << path << "\n";
                return kExitUsage;
            }
            f << buf.str();
        }
        return kExitOk;
    }
};

ComplexMatrix load_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open matrix file: " + path);
    json j;
    f >> j;
    const std::size_t n = j.at("n").get<std::size_t>();
    const auto& rows = j.at("rows");
    if (rows.size() != n) throw std::invalid_argument("matrix file: row count mismatch");
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("matrix file: column count mismatch");
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) = cplx{rows[i][k].at(0).get<double>(), rows[i][k].at(1).get<double>()};
    }
    if (j.contains("scale")) m = cplx{j["scale"].get<double>(), 0.0} * m;
    return m;
}

int cmd_fourier(const std::vector<std::int64_t>& orders, double tol, std::int64_t max_numeric_n,
                const std::string& format, Sink& sink) {
    const AbelianGroup g(orders);
    const ExactFourierMatrix f = fourier_matrix(g);

    const bigint closed = defect_fourier(g);
    const bigint counted = count_ones(f);
    const bigint order_sum = defect_order_sum(g);
    const bigint deph = dephased_defect(closed, g.order());

    bool agree = closed == counted && closed == order_sum;
    std::optional<std::int64_t> numeric;
    bool numeric_warn = false;
    if (g.order() <= max_numeric_n) {
        const DefectReport r = defect_kernel_berezin(to_complex(f, true), tol);
        numeric = r.undephased;
        numeric_warn = r.pivot_gap_warning;
        agree = agree && bigint(r.undephased) == closed;
    }

    if (format == "json") {
        json out;
        out["n"] = g.order();
        out["undephased"] = closed.str();
        out["dephased"] = deph.str();
        out["methods"]["closed-form"] = closed.str();
        out["methods"]["exact-count"] = counted.str();
        out["methods"]["order-sum"] = order_sum.str();
        if (numeric) out["methods"]["kernel-berezin"] = *numeric;
        out["agreement"] = agree;
        sink.buf << out.dump(2) << "\n";
    } else {
        sink.buf << "N = " << g.order() << "\n";
        sink.buf << "undephased defect = " << closed.str() << "\n";
        sink.buf << "dephased defect   = " << deph.str() << "\n";
        sink.buf << "methods: closed-form=" << closed.str() << " exact-count=" << counted.str()
                 << " order-sum=" << order_sum.str();
        if (numeric) sink.buf << " kernel-berezin=" << *numeric;
        sink.buf << "\n";
        if (numeric_warn) sink.buf << "warning: pivot magnitudes near tolerance\n";
        sink.buf << (agree ? "agreement: yes\n" : "agreement: NO\n");
    }
    const int rc = sink.flush();
    if (rc != kExitOk) return rc;
    return agree ? kExitOk : kExitDisagreement;
}

int cmd_unitary(const std::string& path, double tol, const std::string& format, Sink& sink) {
    const ComplexMatrix u = load_matrix_file(path);
    const DefectReport a = defect_kernel_berezin(u, tol);
    const DefectReport b = defect_linear_system(u, tol);
    const bool agree = a.undephased == b.undephased;

    if (format == "json") {
        json out;
        out["n"] = a.n;
        out["undephased"] = a.undephased;
        out["dephased"] = a.dephased;
        out["methods"]["kernel-berezin"] = a.undephased;
        out["methods"]["linear-system"] = b.undephased;
        out["tolerance"] = tol;
        out["pivot_gap_warning"] = a.pivot_gap_warning || b.pivot_gap_warning;
        out["agreement"] = agree;
        sink.buf << out.dump(2) << "\n";
    } else {
        sink.buf << "N = " << a.n << "\n";
        sink.buf << "undephased defect = " << a.undephased << " (kernel-berezin), "
                 << b.undephased << " (linear-system)\n";
        sink.buf << "dephased defect   = " << a.dephased << "\n";
        sink.buf << "tolerance = " << tol << "\n";
        if (a.pivot_gap_warning || b.pivot_gap_warning)
            sink.buf << "warning: pivot magnitudes near tolerance\n";
        sink.buf << (agree ? "agreement: yes\n" : "agreement: NO\n");
    }
    const int rc = sink.flush();
    if (rc != kExitOk) return rc;
    return agree ? kExitOk : kExitDisagreement;
}

std::string canonical_form_str(const AbelianGroup& g) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, ks] : canonical_form(g)) {
        if (!first) os << " ";
        first = false;
        os << p << "^[";
        for (std::size_t i = 0; i < ks.size(); ++i) os << (i ? " " : "") << ks[i];
        os << "]";
    }
    if (first) os << "1";
    return os.str();
}

int cmd_equiv(const std::vector<std::int64_t>& orders_a, const std::vector<std::int64_t>& orders_b,
              Sink& sink) {
    const AbelianGroup ga(orders_a), gb(orders_b);
    if (ga.order() != gb.order())
        throw CLI::ValidationError("equiv", "matrices have different sizes");
    const ExactFourierMatrix fa = fourier_matrix(ga), fb = fourier_matrix(gb);
    const auto witness = perm_equivalent(fa, fb);
    if (!witness) {
        sink.buf << "inequivalent\n";
        sink.buf << "canonical form A: " << canonical_form_str(ga) << "\n";
        sink.buf << "canonical form B: " << canonical_form_str(gb) << "\n";
        return sink.flush();
    }
    sink.buf << "equivalent\n";
    sink.buf << "witness row permutation (ordinal image per row):";
    for (std::int64_t i = 0; i < fa.size(); ++i) sink.buf << " " << witness->left.col(i);
    sink.buf << "\nwitness column permutation (ordinal image per row):";
    for (std::int64_t i = 0; i < fa.size(); ++i) sink.buf << " " << witness->right.col(i);
    sink.buf << "\nverified: S F T* = G exactly\n";
    return sink.flush();
}

int cmd_table(int which, std::int64_t bound, const std::string& format, Sink& sink) {
    if (which == 1) {
        const auto rows = table1(bound);
        if (format == "csv") {
            sink.buf << "partition,undephased_over_monomial,dephased_over_square\n";
            for (const auto& r : rows)
                sink.buf << "\"" << r.partition.str() << "\",\""
                         << r.undephased_over_monomial.str() << "\",\""
                         << r.dephased_over_square.str() << "\"\n";
        } else if (format == "json") {
            json out = json::array();
            for (const auto& r : rows) {
                json row;
                row["partition"] = r.partition.parts;
                row["undephased_over_monomial"] = r.undephased_over_monomial.str();
                row["dephased_over_square"] = r.dephased_over_square.str();
                out.push_back(row);
            }
            sink.buf << out.dump(2) << "\n";
        } else {
            sink.buf << "| partition | (a/N)*undephased | dephased/(a-1)^2 |\n";
            sink.buf << "|---|---|---|\n";
            for (const auto& r : rows)
                sink.buf << "| " << r.partition.str() << " | "
                         << r.undephased_over_monomial.str() << " | "
                         << r.dephased_over_square.str() << " |\n";
        }
    } else {
        const auto rows = table2(bound);
        if (format == "csv") {
            sink.buf << "n,class,undephased,dephased\n";
            for (const auto& r : rows)
                sink.buf << r.n << ",\"" << r.descriptor << "\"," << r.undephased << ","
                         << r.dephased << "\n";
        } else if (format == "json") {
            json out = json::array();
            for (const auto& r : rows) {
                json row;
                row["n"] = r.n;
                row["class"] = r.descriptor;
                row["undephased"] = r.undephased;
                row["dephased"] = r.dephased;
                out.push_back(row);
            }
            sink.buf << out.dump(2) << "\n";
        } else {
            sink.buf << "| N | class | undephased | dephased |\n";
            sink.buf << "|---|---|---|---|\n";
            for (const auto& r : rows)
                sink.buf << "| " << r.n << " | " << r.descriptor << " | " << r.undephased
                         << " | " << r.dephased << " |\n";
        }
    }
    return sink.flush();
}

std::string element_str(const GroupElement& e) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ")";
    return os.str();
}

int cmd_stabilizer(const std::vector<std::int64_t>& orders, bool list_theta, Sink& sink) {
    const AbelianGroup g(orders);
    const ExactFourierMatrix f = fourier_matrix(g);
    const auto perm_pairs = stabilizer_perm_pairs(f);
    const std::int64_t n = g.order(), l = g.exponent();

    sink.buf << "N = " << n << ", L = " << l << "\n";
    sink.buf << "permutation stabilizer pairs (|Aut|): " << perm_pairs.size() << "\n";
    sink.buf << "shift-enphased section size (N^2 * L): " << n * n * l << "\n";

    const CycloDense df = CycloDense::from_fourier(f);
    for (std::size_t p = 0; p < perm_pairs.size(); ++p) {
        if (!(apply_pair(perm_pairs[p], df) == df))
            throw consistency_error("stabilizer pair fails to fix F");
        sink.buf << "perm pair " << p << ": rows";
        for (std::int64_t i = 0; i < n; ++i) sink.buf << " " << perm_pairs[p].left.col(i);
        sink.buf << " | cols";
        for (std::int64_t i = 0; i < n; ++i) sink.buf << " " << perm_pairs[p].right.col(i);
        sink.buf << "\n";
    }

    if (list_theta) {
        for (std::int64_t si = 0; si < n; ++si)
            for (std::int64_t ti = 0; ti < n; ++ti)
                for (std::int64_t e = 0; e < l; ++e) {
                    const SymmetryElement sym{g.element_at(si), g.element_at(ti),
                                              CycloScalar(l, e)};
                    const auto sp = s_pair(f, sym);
                    if (!(apply_pair(sp, df) == df))
                        throw consistency_error("shift-enphased pair fails to fix F");
                    sink.buf << "shift pair s=" << element_str(sym.s)
                             << " t=" << element_str(sym.t) << " theta=w^" << e << "\n";
                }
    }

    // Factorization demo: compose the last permutation pair with a nontrivial
    // shift-enphased pair and recover both factors.
    if (n > 1) {
        const SymmetryElement sym{g.element_at(1 % n), g.element_at((n - 1) % n),
                                  CycloScalar(l, 1 % l)};
        const auto composed = pair_mul(perm_pairs.back(), s_pair(f, sym));
        const auto fac = semidirect_factorize(f, composed);
        sink.buf << "factorization demo: perm * shift(s=" << element_str(fac.shift_right.s)
                 << ", t=" << element_str(fac.shift_right.t) << ", theta=w^"
                 << fac.shift_right.theta.exponent << ")"
                 << " = shift(s=" << element_str(fac.shift_left.s) << ", t="
                 << element_str(fac.shift_left.t) << ", theta=w^"
                 << fac.shift_left.theta.exponent << ") * perm\n";
    }
    return sink.flush();
}

int cmd_spectrum(const std::vector<std::int64_t>& orders, Sink& sink) {
    const AbelianGroup g(orders);
    const ExactFourierMatrix f = fourier_matrix(g);
    const auto ms = entry_multiset(f);
    sink.buf << "eigenvalues of the Berezin transform of (1/sqrt N) F, N = " << g.order()
             << ", L = " << g.exponent() << "\n";
    for (const auto& [e, count] : ms) {
        const cplx v = CycloScalar(g.exponent(), e).value();
        sink.buf << "w^" << e << " = (" << std::setprecision(15) << v.real() << ", " << v.imag()
                 << ")  multiplicity " << count << "\n";
    }
    sink.buf << "multiplicity of 1 (undephased defect): " << count_ones(f) << "\n";
    return sink.flush();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Undephased and dephased defects of unitary matrices"};
    app.require_subcommand(1);

    std::string orders_str, orders_b_str, matrix_path, format = "text", output;
    double tol = kDefaultRankTol;
    std::int64_t max_numeric_n = 16;
    int table_which = 1;
    std::int64_t table_bound = 6;
    bool list_theta = false;

    app.add_option("--tol", tol, "rank tolerance (relative)");
    app.add_option("--format", format, "output format: text|csv|markdown|json");
    app.add_option("--output", output, "write output to a file instead of stdout");

    auto* fourier = app.add_subcommand("fourier", "defects of a Fourier matrix");
    fourier->add_option("--orders", orders_str, "comma-separated group factor orders")
        ->required();
    fourier->add_option("--max-numeric-n", max_numeric_n,
                        "largest size for the numeric cross-check (default 16)");

    auto* unitary = app.add_subcommand("unitary", "numeric defects of a unitary matrix");
    unitary->add_option("file", matrix_path, "JSON matrix file")->required();

    auto* equiv = app.add_subcommand("equiv", "permutation equivalence of Fourier matrices");
    equiv->add_option("--orders-a", orders_str, "factor orders of the first matrix")->required();
    equiv->add_option("--orders-b", orders_b_str, "factor orders of the second matrix")
        ->required();

    auto* table = app.add_subcommand("table", "defect tables");
    table->add_option("--which", table_which, "1 = polynomial table, 2 = size catalogue")
        ->required();
    table->add_option("--max-sum", table_bound, "partition total bound (table 1)");
    table->add_option("--max-n", table_bound, "size bound (table 2)");

    auto* stabilizer = app.add_subcommand("stabilizer", "stabilizer of a Fourier matrix");
    stabilizer->add_option("--orders", orders_str, "comma-separated group factor orders")
        ->required();
    stabilizer->add_flag("--theta-roots", list_theta,
                         "list the full finite shift-enphased section");

    auto* spectrum = app.add_subcommand("spectrum", "Berezin-transform spectrum");
    spectrum->add_option("--orders", orders_str, "comma-separated group factor orders")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    Sink sink;
    sink.path = output;
    try {
        if (fourier->parsed())
            return cmd_fourier(parse_orders(orders_str), tol, max_numeric_n, format, sink);
        if (unitary->parsed()) return cmd_unitary(matrix_path, tol, format, sink);
        if (equiv->parsed())
            return cmd_equiv(parse_orders(orders_str), parse_orders(orders_b_str), sink);
        if (table->parsed()) return cmd_table(table_which, table_bound, format, sink);
        if (stabilizer->parsed())
            return cmd_stabilizer(parse_orders(orders_str), list_theta, sink);
        if (spectrum->parsed()) return cmd_spectrum(parse_orders(orders_str), sink);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const udefect::zero_entry_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitZeroEntry;
    } catch (const udefect::non_unitary_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitNonUnitary;
    } catch (const udefect::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
