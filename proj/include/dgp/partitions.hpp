#ifndef DGP_PARTITIONS_HPP
#define DGP_PARTITIONS_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "count.hpp"
#include "errors.hpp"
#include "primes.hpp"

namespace dgp {

/// A nondecreasing tuple of primes; m is the number of parts, n their sum.
struct PrimePartition {
    std::vector<std::int64_t> parts;

    std::int64_t m() const noexcept { return static_cast<std::int64_t>(parts.size()); }
    std::int64_t n() const noexcept { return std::accumulate(parts.begin(), parts.end(), std::int64_t{0}); }

    /// True iff the tuple is nondecreasing, nonempty, every part is prime,
    /// and the shape matches (m, n).
    bool valid_for(std::int64_t m, std::int64_t n, const PrimeTable& table) const {
        if (parts.empty() || this->m() != m || this->n() != n) return false;
        if (!std::is_sorted(parts.begin(), parts.end())) return false;
        return std::all_of(parts.begin(), parts.end(), [&](std::int64_t p) {
            return p >= 2 && p <= table.limit() && table.is_prime(p);
        });
    }

    friend auto operator<=>(const PrimePartition&, const PrimePartition&) = default;
};

inline constexpr std::size_t kDefaultEntryBudget = std::size_t{1} << 26;

struct CountTableOptions {
    std::optional<std::int64_t> excluded_prime;  // build the p-avoiding table
    std::size_t entry_budget = kDefaultEntryBudget;
};

/// Y(j, s) for 0 <= j <= m_max, 0 <= s <= n_max: the number of multisets of
/// j primes summing to s, optionally restricted to primes other than one
/// excluded prime.
class CountTable {
public:
    CountTable(std::int64_t m_max, std::int64_t n_max, const PrimeTable& table, CountTableOptions options = {})
        : m_max_(m_max), n_max_(n_max), excluded_(options.excluded_prime) {
        if (m_max < 0 || n_max < 0) {
            throw DomainError("count table bounds must be nonnegative, got m_max=" + std::to_string(m_max) +
                              " n_max=" + std::to_string(n_max));
        }
        if (n_max > table.limit()) {
            throw OutOfRangeError("count table up to n=" + std::to_string(n_max) + " needs a prime table up to n, have " +
                                  std::to_string(table.limit()));
        }
        const auto rows = static_cast<std::size_t>(m_max) + 1;
        const auto cols = static_cast<std::size_t>(n_max) + 1;
        if (cols != 0 && rows > options.entry_budget / cols) {
            throw ResourceError("count table " + std::to_string(rows) + " x " + std::to_string(cols) +
                                " exceeds entry budget " + std::to_string(options.entry_budget));
        }
        entries_.resize(rows * cols);
        cell(0, 0) = 1;

        // Multiset knapsack: primes ascending in the outer loop, in-place
        // accumulation so the current prime may repeat. Each nondecreasing
        // tuple is counted exactly once.
        for (const auto p : table.primes_up_to(n_max)) {
            if (excluded_ && *excluded_ == p) continue;
            for (std::int64_t j = 1; j <= m_max; ++j) {
                // (j-1, s-p) is zero unless s - p >= 2(j-1).
                for (std::int64_t s = p + 2 * (j - 1); s <= n_max; ++s) {
                    const Count& from = cell(j - 1, s - p);
                    if (!from.is_zero()) cell(j, s) += from;
                }
            }
        }
    }

    std::int64_t m_max() const noexcept { return m_max_; }
    std::int64_t n_max() const noexcept { return n_max_; }
    std::optional<std::int64_t> excluded_prime() const noexcept { return excluded_; }

    const Count& at(std::int64_t j, std::int64_t s) const {
        if (j < 0 || j > m_max_ || s < 0 || s > n_max_) {
            throw OutOfRangeError("count table entry (" + std::to_string(j) + ", " + std::to_string(s) +
                                  ") outside [0, " + std::to_string(m_max_) + "] x [0, " + std::to_string(n_max_) + "]");
        }
        return entries_[index(j, s)];
    }

    bool covers(std::int64_t j, std::int64_t s) const noexcept {
        return j >= 0 && j <= m_max_ && s >= 0 && s <= n_max_;
    }

private:
    std::size_t index(std::int64_t j, std::int64_t s) const noexcept {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_max_ + 1) + static_cast<std::size_t>(s);
    }
    Count& cell(std::int64_t j, std::int64_t s) noexcept { return entries_[index(j, s)]; }

    std::int64_t m_max_;
    std::int64_t n_max_;
    std::optional<std::int64_t> excluded_;
    std::vector<Count> entries_;
};

inline CountTable build_count_table(std::int64_t m_max, std::int64_t n_max, const PrimeTable& table,
                                    CountTableOptions options = {}) {
    return CountTable(m_max, n_max, table, options);
}

namespace detail {

inline void require_in_table(std::int64_t n, const PrimeTable& table) {
    if (n > table.limit()) {
        throw OutOfRangeError("n=" + std::to_string(n) + " exceeds prime table limit " + std::to_string(table.limit()));
    }
}

}  // namespace detail

/// Y(m, n): multisets of m primes summing to n. Divisibility m | n is not
/// required here.
inline Count count_partitions(std::int64_t m, std::int64_t n, const PrimeTable& table) {
    if (m < 1) throw DomainError("part count m must be >= 1, got " + std::to_string(m));
    if (n < 2) throw DomainError("sum n must be >= 2, got " + std::to_string(n));
    detail::require_in_table(n, table);
    if (n < 2 * m) return 0;
    return CountTable(m, n, table).at(m, n);
}

/// Depth-first walk over S_{m|n} in lexicographic order. The visitor returns
/// false to stop early. Returns the number of tuples visited.
inline std::size_t for_each_partition(std::int64_t m, std::int64_t n, const PrimeTable& table,
                                      const std::function<bool(const PrimePartition&)>& visit) {
    if (m < 1) throw DomainError("part count m must be >= 1, got " + std::to_string(m));
    if (n < 0) throw DomainError("sum n must be nonnegative, got " + std::to_string(n));
    detail::require_in_table(n, table);
    const auto primes = table.primes_up_to(n);
    PrimePartition current;
    current.parts.reserve(static_cast<std::size_t>(m));
    std::size_t visited = 0;
    bool stop = false;

    // remaining parts r >= 1, remaining sum s, smallest allowed prime index.
    std::function<void(std::int64_t, std::int64_t, std::size_t)> descend =
        [&](std::int64_t r, std::int64_t s, std::size_t floor) {
            if (r == 1) {
                if (s >= primes[floor] && table.is_prime(s)) {
                    current.parts.push_back(s);
                    ++visited;
                    if (!visit(current)) stop = true;
                    current.parts.pop_back();
                }
                return;
            }
            for (std::size_t i = floor; i < primes.size() && !stop; ++i) {
                const auto p = primes[i];
                if (p * r > s) break;  // every later part is >= p
                current.parts.push_back(p);
                descend(r - 1, s - p, i);
                current.parts.pop_back();
            }
        };
    if (!primes.empty() && n >= 2 * m) descend(m, n, 0);
    return visited;
}

/// Elements of S_{m|n} in lexicographic order, optionally truncated to `limit` tuples.
inline std::vector<PrimePartition> enumerate_partitions(std::int64_t m, std::int64_t n, const PrimeTable& table,
                                                        std::optional<std::size_t> limit = std::nullopt) {
    std::vector<PrimePartition> out;
    if (limit && *limit == 0) return out;
    for_each_partition(m, n, table, [&](const PrimePartition& part) {
        out.push_back(part);
        return !limit || out.size() < *limit;
    });
    return out;
}

/// Y_{p(z)}(m, n) asks how many tuples of S_{m|n} contain p exactly z times.
struct MultiplicityQuery {
    std::int64_t m;
    std::int64_t n;
    std::int64_t p;
    std::int64_t z;
};

namespace detail {

inline void validate_multiplicity_args(std::int64_t m, std::int64_t n, std::int64_t p, const PrimeTable& table) {
    if (m < 1) throw DomainError("part count m must be >= 1, got " + std::to_string(m));
    if (n < 0) throw DomainError("sum n must be nonnegative, got " + std::to_string(n));
    require_in_table(n, table);
    if (p < 2 || p > table.limit() || !table.is_prime(p)) {
        throw DomainError("multiplicity prime p=" + std::to_string(p) + " is not a prime within the table");
    }
}

inline void validate_multiplicity(std::int64_t z, std::int64_t m) {
    if (z < 0 || z > m) {
        throw DomainError("multiplicity z=" + std::to_string(z) + " outside [0, " + std::to_string(m) + "]");
    }
}

}  // namespace detail

/// Computed as the number of (m - z)-part multisets summing to n - z*p that
/// avoid p, from a dedicated p-skipping DP pass.
inline Count count_with_multiplicity(const MultiplicityQuery& q, const PrimeTable& table) {
    detail::validate_multiplicity_args(q.m, q.n, q.p, table);
    detail::validate_multiplicity(q.z, q.m);
    if (q.z * q.p > q.n) return 0;
    const auto parts = q.m - q.z;
    const auto rest = q.n - q.z * q.p;
    if (rest < 2 * parts) return 0;
    return CountTable(parts, rest, table, {.excluded_prime = q.p}).at(parts, rest);
}

/// Y_{p(A)}(m, n) = sum over z in A of Y_{p(z)}(m, n). The S^{p(z)} are
/// pairwise disjoint, so the union's size is the sum. One avoiding table
/// serves every z.
inline Count count_with_multiplicity_set(std::int64_t m, std::int64_t n, std::int64_t p,
                                         const std::set<std::int64_t>& multiplicities, const PrimeTable& table) {
    detail::validate_multiplicity_args(m, n, p, table);
    for (const auto z : multiplicities) detail::validate_multiplicity(z, m);
    if (multiplicities.empty()) return 0;
    const CountTable avoiding(m, n, table, {.excluded_prime = p});
    Count total = 0;
    for (const auto z : multiplicities) {
        if (z * p > n) continue;
        total += avoiding.at(m - z, n - z * p);
    }
    return total;
}

/// g(E): unordered pairs of primes summing to the even number E.
inline Count goldbach_g(std::int64_t even, const PrimeTable& table) {
    if (even < 4 || even % 2 != 0) throw DomainError("goldbach_g needs an even E >= 4, got " + std::to_string(even));
    detail::require_in_table(even, table);
    std::int64_t pairs = 0;
    for (const auto p : table.primes()) {
        if (2 * p > even) break;
        if (table.is_prime(even - p)) ++pairs;
    }
    return pairs;
}

namespace detail {

// Smallest prime p <= r/2 with r - p prime, if any.
inline std::optional<std::int64_t> goldbach_pair(std::int64_t r, const PrimeTable& table) {
    for (const auto p : table.primes()) {
        if (2 * p > r) break;
        if (table.is_prime(r - p)) return p;
    }
    return std::nullopt;
}

// Walk a full count table choosing any prime whose removal keeps a positive
// count. A positive entry guarantees a completion, so no backtracking occurs.
inline std::optional<PrimePartition> decompose_from_table(std::int64_t m, std::int64_t n, const PrimeTable& table) {
    const CountTable counts(m, n, table);
    if (counts.at(m, n).is_zero()) return std::nullopt;
    PrimePartition out;
    std::int64_t j = m;
    std::int64_t s = n;
    while (j > 0) {
        for (const auto p : table.primes_up_to(s)) {
            if (!counts.at(j - 1, s - p).is_zero()) {
                out.parts.push_back(p);
                s -= p;
                --j;
                break;
            }
        }
    }
    std::sort(out.parts.begin(), out.parts.end());
    return out;
}

}  // namespace detail

/// Some element of S_{m|n}, or nullopt when S_{m|n} is empty.
///
/// Fast path: a twos and b threes (a + b = m - 2, b in {0, 1}) leave an even
/// remainder r >= 4, which is then split by the first Goldbach pair. Anything
/// else falls back to a count-table walk.
inline std::optional<PrimePartition> decompose(std::int64_t m, std::int64_t n, const PrimeTable& table) {
    if (m < 1) throw DomainError("part count m must be >= 1, got " + std::to_string(m));
    if (n < 0) throw DomainError("sum n must be nonnegative, got " + std::to_string(n));
    detail::require_in_table(n, table);
    if (n < 2 * m) return std::nullopt;
    if (m == 1) {
        if (table.is_prime(n)) return PrimePartition{{n}};
        return std::nullopt;
    }
    const std::int64_t threes = (n % 2 == 0) ? 0 : 1;
    const std::int64_t twos = m - 2 - threes;
    if (twos >= 0) {
        const std::int64_t r = n - 2 * twos - 3 * threes;
        if (r >= 4) {
            if (const auto p = detail::goldbach_pair(r, table)) {
                PrimePartition out;
                out.parts.reserve(static_cast<std::size_t>(m));
                out.parts.insert(out.parts.end(), static_cast<std::size_t>(twos), 2);
                out.parts.insert(out.parts.end(), static_cast<std::size_t>(threes), 3);
                out.parts.push_back(*p);
                out.parts.push_back(r - *p);
                std::sort(out.parts.begin(), out.parts.end());
                return out;
            }
        }
    }
    return detail::decompose_from_table(m, n, table);
}

}  // namespace dgp

#endif  // DGP_PARTITIONS_HPP
