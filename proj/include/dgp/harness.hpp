#ifndef DGP_HARNESS_HPP
#define DGP_HARNESS_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <new>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "count.hpp"
#include "errors.hpp"
#include "partitions.hpp"
#include "primes.hpp"

namespace dgp {

/// A member of the domain D: 1 < m < n and m | n.
struct DomainPair {
    std::int64_t m;
    std::int64_t n;
    friend bool operator==(const DomainPair&, const DomainPair&) = default;
};

struct VerificationReport {
    std::pair<std::int64_t, std::int64_t> n_range{0, 0};
    std::int64_t pairs_checked = 0;
    bool witnesses_emitted = false;
    std::vector<DomainPair> counterexamples;
    std::chrono::duration<double> elapsed{0};
    int worker_count = 1;

    bool conjecture_holds() const noexcept { return counterexamples.empty(); }
};

using Decomposer = std::function<std::optional<PrimePartition>(std::int64_t m, std::int64_t n, const PrimeTable&)>;

inline constexpr const char* kWorkersEnv = "DGP_WORKERS";

/// Worker count from DGP_WORKERS, else the hardware concurrency.
inline int default_worker_count() {
    if (const char* env = std::getenv(kWorkersEnv)) {
        try {
            const int w = std::stoi(env);
            if (w >= 1) return w;
        } catch (const std::exception&) {
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

struct VerifyOptions {
    int workers = 1;
    std::ostream* witnesses = nullptr;  // "m,n,parts" rows when set
    Decomposer decomposer;              // defaults to dgp::decompose
    std::int64_t block = 512;           // n values per ordered block
};

namespace detail {

// Runs body(i) for i in [0, count) on a work-stealing pool of `workers` threads.
inline void parallel_indices(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    tbb::task_arena arena(workers);
    arena.execute([&] {
        tbb::parallel_for(tbb::blocked_range<std::size_t>(0, count, 1), [&](const tbb::blocked_range<std::size_t>& r) {
            for (std::size_t i = r.begin(); i != r.end(); ++i) body(i);
        });
    });
}

inline void check_stream(const std::ostream& out, const std::string& what) {
    if (!out) throw IoError("write failed while emitting " + what);
}

inline std::string join_parts(const PrimePartition& p) {
    std::string s;
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(p.parts[i]);
    }
    return s;
}

}  // namespace detail

/// Attempts a witness for every (m, n) in D with n_lo <= n <= n_hi.
///
/// Work is sharded by n inside fixed blocks; each block's results are merged
/// in ascending n before the next block starts, so the report and the witness
/// stream do not depend on the worker count.
inline VerificationReport verify_range(std::int64_t n_lo, std::int64_t n_hi, const PrimeTable& table,
                                       const VerifyOptions& options = {}) {
    if (n_lo < 4) throw DomainError("verify range must start at n >= 4, got " + std::to_string(n_lo));
    if (n_hi < n_lo) throw DomainError("verify range is empty: [" + std::to_string(n_lo) + ", " + std::to_string(n_hi) + "]");
    if (options.workers < 1) throw DomainError("worker count must be >= 1");
    if (n_hi > table.limit()) {
        throw OutOfRangeError("verify range up to " + std::to_string(n_hi) + " needs a prime table up to n, have " +
                              std::to_string(table.limit()));
    }
    const auto started = std::chrono::steady_clock::now();
    const Decomposer decomposer = options.decomposer ? options.decomposer : Decomposer(&decompose);
    const bool want_witnesses = options.witnesses != nullptr;

    VerificationReport report;
    report.n_range = {n_lo, n_hi};
    report.worker_count = options.workers;
    report.witnesses_emitted = want_witnesses;
    if (want_witnesses) *options.witnesses << "m,n,parts\n";

    struct Shard {
        std::int64_t pairs = 0;
        std::vector<DomainPair> missing;
        std::string witnesses;
    };

    std::int64_t last_verified = n_lo - 1;
    const auto block = std::max<std::int64_t>(1, options.block);
    for (std::int64_t start = n_lo; start <= n_hi; start += block) {
        const std::int64_t stop = std::min(n_hi, start + block - 1);
        std::vector<Shard> shards(static_cast<std::size_t>(stop - start + 1));
        try {
            detail::parallel_indices(shards.size(), options.workers, [&](std::size_t i) {
                const std::int64_t n = start + static_cast<std::int64_t>(i);
                Shard& shard = shards[i];
                for (const auto m : proper_divisors(n)) {
                    ++shard.pairs;
                    const auto witness = decomposer(m, n, table);
                    if (!witness || !witness->valid_for(m, n, table)) {
                        shard.missing.push_back({m, n});
                    } else if (want_witnesses) {
                        shard.witnesses += std::to_string(m) + ',' + std::to_string(n) + ',' + detail::join_parts(*witness) + '\n';
                    }
                }
            });
        } catch (const std::bad_alloc&) {
            throw ResourceError("out of memory while verifying; last fully verified n = " + std::to_string(last_verified));
        }
        for (auto& shard : shards) {
            report.pairs_checked += shard.pairs;
            report.counterexamples.insert(report.counterexamples.end(), shard.missing.begin(), shard.missing.end());
            if (want_witnesses) *options.witnesses << shard.witnesses;
        }
        if (want_witnesses) detail::check_stream(*options.witnesses, "witnesses");
        last_verified = stop;
    }
    report.elapsed = std::chrono::steady_clock::now() - started;
    return report;
}

/// Rows "E,g" for E = 4, 6, ..., E_max. Returns the row count.
inline std::size_t emit_comet(std::int64_t e_max, std::ostream& out, const PrimeTable& table, int workers = 1) {
    if (e_max < 4) throw DomainError("comet needs E_max >= 4, got " + std::to_string(e_max));
    const std::int64_t last = e_max - e_max % 2;
    detail::require_in_table(last, table);
    const auto rows = static_cast<std::size_t>(last / 2 - 1);
    std::vector<Count> values(rows);
    detail::parallel_indices(rows, workers, [&](std::size_t i) {
        values[i] = goldbach_g(4 + 2 * static_cast<std::int64_t>(i), table);
    });
    out << "E,g\n";
    for (std::size_t i = 0; i < rows; ++i) {
        out << 4 + 2 * static_cast<std::int64_t>(i) << ',' << to_decimal(values[i]) << '\n';
    }
    detail::check_stream(out, "comet");
    return rows;
}

struct SurfaceOptions {
    std::optional<std::int64_t> m_max;  // default n_max / 2, the largest proper divisor possible
    int workers = 1;
};

/// Rows "m,n,Y" for every (m, n) in D with n <= n_max, ordered by n then m.
inline std::size_t emit_surface(std::int64_t n_max, std::ostream& out, const PrimeTable& table,
                                const SurfaceOptions& options = {}) {
    if (n_max < 4) throw DomainError("surface needs n_max >= 4, got " + std::to_string(n_max));
    const std::int64_t m_cap = options.m_max.value_or(n_max / 2);
    if (m_cap < 2) throw DomainError("surface m_max must be >= 2, got " + std::to_string(m_cap));
    const CountTable counts(std::min(m_cap, n_max / 2), n_max, table);
    const auto shards = static_cast<std::size_t>(n_max - 3);
    std::vector<std::string> rendered(shards);
    std::vector<std::size_t> row_counts(shards, 0);
    detail::parallel_indices(shards, options.workers, [&](std::size_t i) {
        const std::int64_t n = 4 + static_cast<std::int64_t>(i);
        std::string text;
        for (const auto m : proper_divisors(n)) {
            if (m > m_cap) break;
            text += std::to_string(m) + ',' + std::to_string(n) + ',' + to_decimal(counts.at(m, n)) + '\n';
            ++row_counts[i];
        }
        rendered[i] = std::move(text);
    });
    out << "m,n,Y\n";
    std::size_t total = 0;
    for (std::size_t i = 0; i < shards; ++i) {
        out << rendered[i];
        total += row_counts[i];
    }
    detail::check_stream(out, "surface");
    return total;
}

/// Rows "n,Y" for n = 2m, 3m, ... <= n_max. m = 2 goes through the pair scan.
inline std::size_t emit_fixed_m(std::int64_t m, std::int64_t n_max, std::ostream& out, const PrimeTable& table) {
    if (m < 2) throw DomainError("fixed-m needs m >= 2, got " + std::to_string(m));
    detail::require_in_table(n_max, table);
    out << "n,Y\n";
    std::size_t rows = 0;
    if (m == 2) {
        for (std::int64_t n = 4; n <= n_max; n += 2, ++rows) out << n << ',' << to_decimal(goldbach_g(n, table)) << '\n';
    } else if (n_max >= 2 * m) {
        const CountTable counts(m, n_max, table);
        for (std::int64_t n = 2 * m; n <= n_max; n += m, ++rows) out << n << ',' << to_decimal(counts.at(m, n)) << '\n';
    }
    detail::check_stream(out, "fixed-m");
    return rows;
}

/// Rows "m,Y" with Y = Y(m, k*m) for m = 2..m_max.
inline std::size_t emit_fixed_k(std::int64_t k, std::int64_t m_max, std::ostream& out, const PrimeTable& table) {
    if (k < 2) throw DomainError("fixed-k needs k >= 2, got " + std::to_string(k));
    if (m_max < 2) throw DomainError("fixed-k needs m_max >= 2, got " + std::to_string(m_max));
    const CountTable counts(m_max, k * m_max, table);
    out << "m,Y\n";
    for (std::int64_t m = 2; m <= m_max; ++m) out << m << ',' << to_decimal(counts.at(m, k * m)) << '\n';
    detail::check_stream(out, "fixed-k");
    return static_cast<std::size_t>(m_max - 1);
}

}  // namespace dgp

#endif  // DGP_HARNESS_HPP
