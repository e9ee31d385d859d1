#ifndef DGP_CLI_HPP
#define DGP_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "estimates.hpp"
#include "harness.hpp"
#include "identities.hpp"
#include "partitions.hpp"
#include "primes.hpp"

namespace dgp {

enum ExitStatus : int {
    kExitOk = 0,
    kExitCounterexample = 1,  // conjecture counterexample or identity failure
    kExitUsage = 2,           // bad flags or domain errors
    kExitResource = 3,        // memory, budget or I/O failure
};

/// In-process overrides; the shipped binary uses the defaults.
struct CliHooks {
    Decomposer decomposer;
};

namespace detail {

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

inline void print_report(const IdentityReport& r, std::ostream& out) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.range << ")";
    if (r.first_counterexample) {
        out << " first counterexample:";
        for (const auto& [k, v] : r.first_counterexample->parameters) out << ' ' << k << '=' << v;
        out << " lhs=" << to_decimal(r.first_counterexample->lhs) << " rhs=" << to_decimal(r.first_counterexample->rhs);
    }
    out << '\n';
    if (!r.note.empty()) out << "  note: " << r.note << '\n';
}

inline std::vector<IdentityReport> run_suite(const std::string& suite, std::int64_t p, std::int64_t max_m) {
    const bool all = suite == "all";
    std::int64_t limit = 2 * std::max<std::int64_t>(max_m, 2);
    if (suite != "double") limit = std::max(limit, p * (max_m + 1));
    const PrimeTable table(std::max<std::int64_t>(limit, 2));
    if (suite != "double") require_prime(p, table);

    std::vector<IdentityReport> reports;
    if (all || suite == "double") reports.push_back(check_theorem_double(max_m, table));
    if (all || suite == "prime-quotient") reports.push_back(check_theorem_prime_quotient(p, max_m, table));
    if (all || suite == "recurrence") {
        reports.push_back(check_recurrence(p, max_m, table));
        reports.push_back(check_multiplicity_union(p, max_m, table));
    }
    if (all || suite == "corollary") reports.push_back(check_corollary_telescope(p, max_m, table));
    if (all || suite == "bijection") {
        IdentityReport merged{"bijection", "p=" + std::to_string(p) + ", m in [1, " + std::to_string(max_m) + "], all z"};
        for (std::int64_t m = 1; m <= max_m; ++m) {
            auto r = check_bijection(p, m, table);
            if (!r.passed) merged.fail(*r.first_counterexample);
        }
        reports.push_back(merged);
    }
    return reports;
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one subcommand.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const CliHooks& hooks = {}) {
    CLI::App app{"Divisor-Goldbach partitions: count, list, verify and analyze sums of m primes equal to n", "dgp"};
    app.require_subcommand(1);

    std::int64_t m = 0, n = 0, n_lo = 0, n_hi = 0, k = 0, e = 0, m_lo = 0, m_hi = 0, p = 5, max_m = 20;
    std::int64_t limit = 0;
    std::optional<std::int64_t> surface_m_max;
    int workers = 0;
    bool witnesses = false;
    std::string out_path, witness_path = "witnesses.csv", suite;

    auto* verify = app.add_subcommand("verify", "Find a witness for every (m, n) with m | n, 1 < m < n, over a range of n");
    verify->add_option("--min", n_lo, "Smallest n (>= 4)")->required();
    verify->add_option("--max", n_hi, "Largest n")->required();
    verify->add_option("--workers", workers, "Worker threads (default: $DGP_WORKERS or hardware concurrency)");
    verify->add_flag("--witnesses", witnesses, "Write one witness per pair to the witness file");
    verify->add_option("--witness-file", witness_path, "Witness sidecar path")->capture_default_str();

    auto* count = app.add_subcommand("count", "Print Y(m, n), the number of multisets of m primes summing to n");
    count->add_option("--m", m, "Number of prime parts")->required();
    count->add_option("--n", n, "Target sum")->required();

    auto* list = app.add_subcommand("list", "List the partitions of n into m primes in lexicographic order");
    list->add_option("--m", m, "Number of prime parts")->required();
    list->add_option("--n", n, "Target sum")->required();
    list->add_option("--limit", limit, "Stop after this many tuples");

    auto* comet = app.add_subcommand("comet", "Write E,g(E) for even E up to --max");
    comet->add_option("--max", e, "Largest even E")->required();
    comet->add_option("--out", out_path, "Output CSV path")->required();
    comet->add_option("--workers", workers, "Worker threads");

    auto* surface = app.add_subcommand("surface", "Write m,n,Y(m,n) for every divisor pair with n <= --max");
    surface->add_option("--max", n, "Largest n")->required();
    surface->add_option("--out", out_path, "Output CSV path")->required();
    surface->add_option("--max-m", surface_m_max, "Omit rows with m above this (default n/2)");
    surface->add_option("--workers", workers, "Worker threads");

    auto* fixed_m = app.add_subcommand("fixed-m", "Write n,Y(m,n) for multiples n of a fixed m");
    fixed_m->add_option("--m", m, "Fixed part count")->required();
    fixed_m->add_option("--max", n, "Largest n")->required();
    fixed_m->add_option("--out", out_path, "Output CSV path")->required();

    auto* fixed_k = app.add_subcommand("fixed-k", "Write m,Y(m,k*m) for a fixed quotient k");
    fixed_k->add_option("--k", k, "Quotient n/m")->required();
    fixed_k->add_option("--max-m", m_hi, "Largest m")->required();
    fixed_k->add_option("--out", out_path, "Output CSV path")->required();

    auto* estimate = app.add_subcommand("estimate", "Compare the Hardy-Littlewood estimate with g(E)");
    estimate->add_option("--e", e, "Even E >= 8")->required();

    auto* fit = app.add_subcommand("fit", "Fit ln(Y(m,km) pi(m)) = log C + c(k) m by least squares");
    fit->add_option("--k", k, "Quotient n/m")->required();
    fit->add_option("--min-m", m_lo, "Smallest m (>= 2)")->required();
    fit->add_option("--max-m", m_hi, "Largest m")->required();

    auto* check = app.add_subcommand("check", "Scan the exact identities for counterexamples");
    check->add_option("--suite", suite, "Identity suite")
        ->required()
        ->check(CLI::IsMember({"double", "prime-quotient", "recurrence", "corollary", "bijection", "all"}));
    check->add_option("--p", p, "Prime quotient")->capture_default_str();
    check->add_option("--max-m", max_m, "Largest m scanned")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const int pool = workers > 0 ? workers : default_worker_count();
    try {
        if (*verify) {
            if (n_lo < 4) throw DomainError("--min must be >= 4");
            if (n_hi < n_lo) throw DomainError("--max must be >= --min");
            const PrimeTable table(n_hi);
            VerifyOptions options;
            options.workers = pool;
            options.decomposer = hooks.decomposer;
            std::ofstream sidecar;
            if (witnesses) {
                sidecar = detail::open_output(witness_path);
                options.witnesses = &sidecar;
            }
            const auto report = verify_range(n_lo, n_hi, table, options);
            out << "range " << n_lo << ".." << n_hi << " pairs_checked=" << report.pairs_checked
                << " counterexamples=" << report.counterexamples.size() << " workers=" << report.worker_count
                << " elapsed=" << std::fixed << std::setprecision(3) << report.elapsed.count() << "s\n";
            for (const auto& pair : report.counterexamples) {
                out << "counterexample m=" << pair.m << " n=" << pair.n << '\n';
            }
            if (witnesses) out << "witnesses written to " << witness_path << '\n';
            return report.conjecture_holds() ? kExitOk : kExitCounterexample;
        }
        if (*count) {
            const PrimeTable table(std::max<std::int64_t>(n, 2));
            out << to_decimal(count_partitions(m, n, table)) << '\n';
            return kExitOk;
        }
        if (*list) {
            if (limit < 0) throw DomainError("--limit must be nonnegative");
            const PrimeTable table(std::max<std::int64_t>(n, 2));
            std::optional<std::size_t> cap;
            if (limit > 0) cap = static_cast<std::size_t>(limit);
            for (const auto& part : enumerate_partitions(m, n, table, cap)) out << detail::join_parts(part) << '\n';
            return kExitOk;
        }
        if (*comet) {
            if (e < 4) throw DomainError("--max must be >= 4");
            const PrimeTable table(e);
            auto file = detail::open_output(out_path);
            const auto rows = emit_comet(e, file, table, pool);
            out << rows << " rows written to " << out_path << '\n';
            return kExitOk;
        }
        if (*surface) {
            if (n < 4) throw DomainError("--max must be >= 4");
            const PrimeTable table(n);
            auto file = detail::open_output(out_path);
            const auto rows = emit_surface(n, file, table, {.m_max = surface_m_max, .workers = pool});
            out << rows << " rows written to " << out_path << '\n';
            return kExitOk;
        }
        if (*fixed_m) {
            if (m < 2) throw DomainError("--m must be >= 2");
            const PrimeTable table(std::max<std::int64_t>(n, 2));
            auto file = detail::open_output(out_path);
            const auto rows = emit_fixed_m(m, n, file, table);
            out << rows << " rows written to " << out_path << '\n';
            return kExitOk;
        }
        if (*fixed_k) {
            if (k < 2 || m_hi < 2) throw DomainError("--k and --max-m must be >= 2");
            const PrimeTable table(k * m_hi);
            auto file = detail::open_output(out_path);
            const auto rows = emit_fixed_k(k, m_hi, file, table);
            out << rows << " rows written to " << out_path << '\n';
            return kExitOk;
        }
        if (*estimate) {
            if (e < 8 || e % 2 != 0) throw DomainError("--e must be an even number >= 8");
            const PrimeTable table(e);
            const auto est = hl_estimate(e, table);
            const auto g = goldbach_g(e, table);
            out << std::setprecision(10) << "E=" << e << " g=" << to_decimal(g) << " estimate=" << est.value
                << " singular_factor=" << est.singular_factor << " C=" << est.twin_constant_used << '\n';
            return kExitOk;
        }
        if (*fit) {
            if (k < 2) throw DomainError("--k must be >= 2");
            if (m_lo < 2 || m_hi <= m_lo) throw DomainError("need 2 <= --min-m < --max-m");
            const PrimeTable table(k * m_hi);
            const CountTable counts(m_hi, k * m_hi, table);
            const auto r = fit_exponential(k, m_lo, m_hi, counts, table);
            out << std::setprecision(10) << "k=" << r.k << " m=[" << r.sample_range.first << "," << r.sample_range.second
                << "] c_of_k=" << r.c_of_k << " log_C=" << r.log_C << " rms_residual=" << r.rms_residual << '\n';
            if (r.inexact_conversions > 0) {
                err << "warning: " << r.inexact_conversions << " counts exceed double precision and were rounded\n";
            }
            return kExitOk;
        }
        if (*check) {
            if (max_m < 2) throw DomainError("--max-m must be >= 2");
            if (p < 2) throw DomainError("--p must be a prime");
            bool all_passed = true;
            for (const auto& r : detail::run_suite(suite, p, max_m)) {
                detail::print_report(r, out);
                all_passed = all_passed && r.passed;
            }
            return all_passed ? kExitOk : kExitCounterexample;
        }
    } catch (const DataError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitCounterexample;
    } catch (const DomainError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const OutOfRangeError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const ResourceError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitResource;
    } catch (const IoError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitResource;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kExitResource;
    }
    return kExitUsage;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, out, err);
}

}  // namespace dgp

#endif  // DGP_CLI_HPP
