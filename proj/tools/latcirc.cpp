// latcirc: command-line front end for lattice-circle classification.
//
// Exit codes: 0 success, 1 verification mismatch or failed consistency
// check, 2 invalid flags or unreadable input.

#include "latcirc/io.hpp"
#include "latcirc/oracles.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

using namespace latcirc;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

EnumerationOptions enum_opts(unsigned threads) {
    EnumerationOptions o;
    o.threads = threads;
    return o;
}

RhoTable load_table(std::int64_t m, const std::string& cache, unsigned threads) {
    if (cache.empty()) return build_rho_table(m, enum_opts(threads));
    CacheLoad load = rho_table_with_cache(cache, m, enum_opts(threads));
    if (load.warning) std::cerr << "warning: " << *load.warning << '\n';
    return std::move(load.table);
}

int report_suite(const std::vector<OracleReport>& reports) {
    bool ok = true;
    for (const auto& r : reports) {
        if (r.agreement) continue;
        std::cerr << (r.gate ? "FAILED " : "note: ") << r.subject << ": " << r.first_divergence.value_or("") << '\n';
        if (r.gate) ok = false;
    }
    return ok ? 0 : kExitMismatch;
}

Integer oeis_term(const std::string& seq, std::int64_t k) {
    const Rational r2(k * k);
    if (seq == "A000328") return closed_count_N(r2);
    if (seq == "A051132") return closed_count_nu(r2);
    if (seq == "A046109") return closed_count_N(r2) - closed_count_nu(r2);
    throw UsageError("unsupported sequence " + seq);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact classification of maximally circlable numbers"};
    app.require_subcommand(1);
    app.fallthrough();  // --threads may also follow the subcommand
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: THREADS env or hardware)");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "Classify every n <= max as MC or non-MC");
    std::int64_t max_n = 0;
    std::string format = "csv";
    std::string cache;
    bool approx = false;
    classify_cmd->add_option("--max", max_n, "Largest n")->required()->check(CLI::NonNegativeNumber);
    classify_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    classify_cmd->add_option("--cache", cache, "Enumeration cache file");
    classify_cmd->add_flag("--approx", approx, "Append a 6-decimal radius column (CSV)");

    // rho
    auto* rho_cmd = app.add_subcommand("rho", "Largest lattice-circle radius per interior count");
    std::int64_t rho_max = 0;
    rho_cmd->add_option("--max", rho_max)->required()->check(CLI::PositiveNumber);
    rho_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    rho_cmd->add_option("--cache", cache);

    // special
    auto* special_cmd = app.add_subcommand("special", "Parametric circle families: f (S_k) or g (T_k)");
    std::string family;
    std::int64_t max_k = 20;
    special_cmd->add_option("family", family)->required()->check(CLI::IsMember({"f", "g"}));
    special_cmd->add_option("--max-k", max_k)->check(CLI::PositiveNumber);
    special_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // symmetry
    auto* sym_cmd = app.add_subcommand("symmetry", "Mirror symmetries of MC-circle witnesses");
    std::int64_t sym_max = 0;
    std::int64_t bin_width = 100;
    bool census_only = false;
    sym_cmd->add_option("--max", sym_max)->required()->check(CLI::PositiveNumber);
    sym_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sym_cmd->add_option("--bin-width", bin_width)->check(CLI::PositiveNumber);
    sym_cmd->add_flag("--census", census_only, "Print binned totals instead of per-n rows (CSV)");
    sym_cmd->add_option("--cache", cache);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Cross-checks against external data and oracles");
    verify_cmd->require_subcommand(1);
    auto* oeis_cmd = verify_cmd->add_subcommand("oeis", "Compare counting formulas with an OEIS b-file");
    std::string seq, bfile;
    std::int64_t upto = 100;
    oeis_cmd->add_option("--seq", seq)->required()->check(CLI::IsMember({"A000328", "A051132", "A046109"}));
    oeis_cmd->add_option("--bfile", bfile)->required();
    oeis_cmd->add_option("--upto", upto)->check(CLI::PositiveNumber);
    auto* oracle_cmd = verify_cmd->add_subcommand("oracle", "Fast paths against the brute-force oracles");
    std::vector<std::string> bounds{"1/2", "5/2", "9"};
    std::int64_t random_circles = 500;
    std::uint64_t seed = 20260101;
    oracle_cmd->add_option("--b2", bounds, "Enumeration bounds to compare (each <= 9)");
    oracle_cmd->add_option("--random", random_circles, "Random circles for the counting check")
        ->check(CLI::NonNegativeNumber);
    oracle_cmd->add_option("--seed", seed);

    // count
    auto* count_cmd = app.add_subcommand("count", "Lattice points inside and on one circle");
    std::string cx = "0", cy = "0", r2 = "1";
    bool points = false;
    count_cmd->add_option("--cx", cx);
    count_cmd->add_option("--cy", cy);
    count_cmd->add_option("--r2", r2)->required();
    count_cmd->add_flag("--points", points, "Also list the boundary points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*classify_cmd) {
            const RhoTable table = load_table(std::max<std::int64_t>(max_n, 1), cache, threads);
            const auto rows = classify(table, max_n);
            if (format == "json")
                std::cout << classification_json(rows).dump(2) << '\n';
            else
                write_classification_csv(std::cout, rows, approx);
            return report_suite(theorem_suite(rows, table));
        }
        if (*rho_cmd) {
            const RhoTable table = load_table(rho_max, cache, threads);
            if (format == "json")
                std::cout << rho_json(table).dump(2) << '\n';
            else
                write_rho_csv(std::cout, table);
            return 0;
        }
        if (*special_cmd) {
            const auto recs = special_table(family == "f" ? Family::S : Family::T, max_k);
            if (format == "json")
                std::cout << special_json(recs).dump(2) << '\n';
            else
                write_special_csv(std::cout, recs);
            return 0;
        }
        if (*sym_cmd) {
            const RhoTable table = load_table(sym_max, cache, threads);
            const auto rows = classify(table, sym_max, false);
            const auto census = symmetry_census(rows, table, bin_width);
            if (format == "json") {
                std::cout << symmetry_json(census).dump(2) << '\n';
            } else {
                std::cout << "# witness-based; bucket precedence: " << bucket_precedence_text() << '\n';
                if (census_only)
                    write_census_csv(std::cout, census);
                else
                    write_symmetry_csv(std::cout, census);
            }
            return 0;
        }
        if (*oeis_cmd) {
            std::ifstream in(bfile);
            if (!in) throw UsageError("cannot read " + bfile);
            BFileSeries series;
            try {
                series = parse_bfile(in, seq);
            } catch (const BFileError& e) {
                std::cerr << bfile << ": " << e.what() << '\n';
                return kExitUsage;
            }
            std::int64_t compared = 0;
            for (const auto& [k, term] : series.terms) {
                if (k < 1 || k > upto) continue;
                const Integer mine = oeis_term(seq, k);
                if (mine != term) {
                    std::cerr << seq << " differs at k=" << k << ": computed " << mine << ", b-file " << term << '\n';
                    return kExitMismatch;
                }
                ++compared;
            }
            if (compared < upto) {
                std::cerr << seq << ": b-file has only " << compared << " terms in 1.." << upto << '\n';
                return kExitMismatch;
            }
            std::cout << seq << ": " << compared << " terms match\n";
            return 0;
        }
        if (*oracle_cmd) {
            std::vector<OracleReport> reports;
            for (const auto& b : bounds) reports.push_back(enumeration_agreement(Rational::parse(b)));
            OracleReport counts{"count_points vs naive_count, " + std::to_string(random_circles) + " circles"};
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<std::int64_t> den(1, 12), r2num(1, 400);
            for (std::int64_t i = 0; i < random_circles && counts.agreement; ++i) {
                const std::int64_t dx = den(rng), dy = den(rng), dr = den(rng);
                std::uniform_int_distribution<std::int64_t> cxn(-3 * dx, 3 * dx), cyn(-3 * dy, 3 * dy);
                const Circle c(Rational(cxn(rng), dx), Rational(cyn(rng), dy),
                               Rational(std::min<std::int64_t>(r2num(rng), 100 * dr), dr));
                if (count_points(c) != naive_count(c)) {
                    counts.agreement = false;
                    counts.first_divergence = "center (" + c.cx.str() + ", " + c.cy.str() + ") r2=" + c.r2.str();
                }
            }
            reports.push_back(counts);
            for (const auto& r : reports)
                std::cout << (r.agreement ? "agree    " : "DISAGREE ") << r.subject
                          << (r.first_divergence ? ": " + *r.first_divergence : std::string()) << '\n';
            return all_agree(reports) ? 0 : kExitMismatch;
        }
        if (*count_cmd) {
            const Circle c(Rational::parse(cx), Rational::parse(cy), Rational::parse(r2));
            const PointCount pc = count_points(c);
            std::cout << "interior " << pc.interior << "\nboundary " << pc.boundary << '\n';
            if (points)
                for (const auto& p : boundary_points(c)) std::cout << p.x << ' ' << p.y << '\n';
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMismatch;
    }
    return 0;
}
