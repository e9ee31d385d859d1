#ifndef DGP_IDENTITIES_HPP
#define DGP_IDENTITIES_HPP

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "count.hpp"
#include "errors.hpp"
#include "partitions.hpp"
#include "primes.hpp"

namespace dgp {

struct Counterexample {
    std::vector<std::pair<std::string, std::int64_t>> parameters;
    Count lhs;
    Count rhs;

    std::optional<std::int64_t> parameter(const std::string& name) const {
        for (const auto& [key, value] : parameters) {
            if (key == name) return value;
        }
        return std::nullopt;
    }
};

/// Outcome of scanning one identity over a parameter range.
/// passed is true exactly when first_counterexample is empty.
struct IdentityReport {
    std::string name;
    std::string range;
    bool passed = true;
    std::optional<Counterexample> first_counterexample;
    std::string note;

    void fail(Counterexample c) {
        if (!passed) return;
        passed = false;
        first_counterexample = std::move(c);
    }
};

/// What the checks need from a counting backend. ExactCounter is the real
/// one; tests substitute perturbed backends to exercise failure reports.
template <class C>
concept PartitionCounter = requires(const C& c, std::int64_t v, const MultiplicityQuery& q,
                                    const std::function<bool(const PrimePartition&)>& visit) {
    { c.total(v, v) } -> std::convertible_to<Count>;
    { c.with_multiplicity(q) } -> std::convertible_to<Count>;
    { c.for_each(v, v, visit) } -> std::convertible_to<std::size_t>;
    { c.primes() } -> std::convertible_to<const PrimeTable&>;
};

/// Counts through the partitions module. When built with bounds, total()
/// reads one prebuilt count table for in-range queries; multiplicity counts
/// always run their own p-avoiding DP.
class ExactCounter {
public:
    explicit ExactCounter(const PrimeTable& table) : table_(&table) {}
    ExactCounter(const PrimeTable& table, std::int64_t m_max, std::int64_t n_max)
        : table_(&table), counts_(std::in_place, m_max, n_max, table) {}

    Count total(std::int64_t m, std::int64_t n) const {
        if (counts_ && counts_->covers(m, n) && m >= 1 && n >= 2) return counts_->at(m, n);
        return count_partitions(m, n, *table_);
    }
    Count with_multiplicity(const MultiplicityQuery& q) const { return count_with_multiplicity(q, *table_); }
    std::size_t for_each(std::int64_t m, std::int64_t n,
                         const std::function<bool(const PrimePartition&)>& visit) const {
        return for_each_partition(m, n, *table_, visit);
    }
    const PrimeTable& primes() const noexcept { return *table_; }

private:
    const PrimeTable* table_;
    std::optional<CountTable> counts_;
};

namespace detail {

inline std::string span_text(const std::string& label, std::int64_t lo, std::int64_t hi) {
    return label + " in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

inline void require_prime(std::int64_t p, const PrimeTable& table) {
    if (p < 2 || p > table.limit() || !table.is_prime(p)) {
        throw DomainError("p=" + std::to_string(p) + " is not a prime within the table");
    }
}

}  // namespace detail

/// Y(m, 2m) == 1 for 2 <= m <= m_max.
template <PartitionCounter Counter>
IdentityReport check_theorem_double(std::int64_t m_max, const Counter& counter) {
    IdentityReport report{"double", detail::span_text("m", 2, m_max)};
    for (std::int64_t m = 2; m <= m_max; ++m) {
        const Count y = counter.total(m, 2 * m);
        if (y != 1) report.fail({{{"m", m}, {"n", 2 * m}}, y, 1});
    }
    return report;
}

inline IdentityReport check_theorem_double(std::int64_t m_max, const PrimeTable& table) {
    return check_theorem_double(m_max, ExactCounter(table, std::max<std::int64_t>(m_max, 0), 2 * std::max<std::int64_t>(m_max, 0)));
}

/// Y(m, p*m) >= 1 and the constant tuple (p, ..., p) lies in S_{m|pm}.
template <PartitionCounter Counter>
IdentityReport check_theorem_prime_quotient(std::int64_t p, std::int64_t m_max, const Counter& counter) {
    const auto& table = counter.primes();
    detail::require_prime(p, table);
    IdentityReport report{"prime-quotient", "p=" + std::to_string(p) + ", " + detail::span_text("m", 2, m_max)};
    for (std::int64_t m = 2; m <= m_max; ++m) {
        const Count y = counter.total(m, p * m);
        const PrimePartition constant{std::vector<std::int64_t>(static_cast<std::size_t>(m), p)};
        if (y < 1) report.fail({{{"p", p}, {"m", m}, {"n", p * m}}, y, 1});
        if (!constant.valid_for(m, p * m, table)) report.fail({{{"p", p}, {"m", m}, {"n", p * m}, {"constant", 1}}, 0, 1});
    }
    return report;
}

inline IdentityReport check_theorem_prime_quotient(std::int64_t p, std::int64_t m_max, const PrimeTable& table) {
    detail::require_prime(p, table);
    const auto bound = std::max<std::int64_t>(m_max, 0);
    return check_theorem_prime_quotient(p, m_max, ExactCounter(table, bound, p * bound));
}

/// Y_{p(z)}(m, mp) == Y_{p(z+1)}(m+1, (m+1)p) for 2 <= m <= m_max, 0 <= z <= m.
template <PartitionCounter Counter>
IdentityReport check_recurrence(std::int64_t p, std::int64_t m_max, const Counter& counter) {
    detail::require_prime(p, counter.primes());
    IdentityReport report{"recurrence", "p=" + std::to_string(p) + ", " + detail::span_text("m", 2, m_max) + ", all z"};
    if (p == 2) {
        report.note = "degenerate for p=2: only (2,...,2) sums to 2m, so every class below z=m is empty";
    }
    for (std::int64_t m = 2; m <= m_max; ++m) {
        for (std::int64_t z = 0; z <= m; ++z) {
            const Count lhs = counter.with_multiplicity({m, m * p, p, z});
            const Count rhs = counter.with_multiplicity({m + 1, (m + 1) * p, p, z + 1});
            if (lhs != rhs) report.fail({{{"p", p}, {"m", m}, {"z", z}}, lhs, rhs});
        }
    }
    return report;
}

inline IdentityReport check_recurrence(std::int64_t p, std::int64_t m_max, const PrimeTable& table) {
    return check_recurrence(p, m_max, ExactCounter(table));
}

/// Y(m, mp) == 1 + sum_{j=2..m} Y_{p(0)}(j, jp).
template <PartitionCounter Counter>
IdentityReport check_corollary_telescope(std::int64_t p, std::int64_t m_max, const Counter& counter) {
    detail::require_prime(p, counter.primes());
    IdentityReport report{"corollary", "p=" + std::to_string(p) + ", " + detail::span_text("m", 2, m_max)};
    Count telescoped = 1;
    for (std::int64_t m = 2; m <= m_max; ++m) {
        telescoped += counter.with_multiplicity({m, m * p, p, 0});
        const Count direct = counter.total(m, m * p);
        if (direct != telescoped) report.fail({{{"p", p}, {"m", m}}, direct, telescoped});
    }
    return report;
}

inline IdentityReport check_corollary_telescope(std::int64_t p, std::int64_t m_max, const PrimeTable& table) {
    detail::require_prime(p, table);
    const auto bound = std::max<std::int64_t>(m_max, 0);
    return check_corollary_telescope(p, m_max, ExactCounter(table, bound, p * bound));
}

/// Y(m, mp) == sum_{z=0..m} Y_{p(z)}(m, mp): the multiplicity classes cover S_{m|mp}.
template <PartitionCounter Counter>
IdentityReport check_multiplicity_union(std::int64_t p, std::int64_t m_max, const Counter& counter) {
    detail::require_prime(p, counter.primes());
    IdentityReport report{"multiplicity-union", "p=" + std::to_string(p) + ", " + detail::span_text("m", 2, m_max)};
    for (std::int64_t m = 2; m <= m_max; ++m) {
        Count sum = 0;
        for (std::int64_t z = 0; z <= m; ++z) sum += counter.with_multiplicity({m, m * p, p, z});
        const Count direct = counter.total(m, m * p);
        if (sum != direct) report.fail({{{"p", p}, {"m", m}}, direct, sum});
    }
    return report;
}

inline IdentityReport check_multiplicity_union(std::int64_t p, std::int64_t m_max, const PrimeTable& table) {
    detail::require_prime(p, table);
    const auto bound = std::max<std::int64_t>(m_max, 0);
    return check_multiplicity_union(p, m_max, ExactCounter(table, bound, p * bound));
}

inline constexpr std::size_t kDefaultEnumerationBudget = 1'000'000;

/// Appending one copy of p maps S^{p(z)}_{m|mp} onto S^{p(z+1)}_{(m+1)|(m+1)p}
/// injectively, for every z. Both sides are materialized by enumeration.
template <PartitionCounter Counter>
IdentityReport check_bijection(std::int64_t p, std::int64_t m, const Counter& counter,
                               std::size_t budget = kDefaultEnumerationBudget) {
    detail::require_prime(p, counter.primes());
    if (m < 1) throw DomainError("bijection check needs m >= 1, got " + std::to_string(m));
    IdentityReport report{"bijection", "p=" + std::to_string(p) + ", m=" + std::to_string(m) + ", all z"};
    const Count target_size = counter.total(m + 1, (m + 1) * p);
    if (target_size > budget) {
        throw ResourceError("bijection check for p=" + std::to_string(p) + ", m=" + std::to_string(m) + " needs " +
                            to_decimal(target_size) + " tuples, enumeration budget is " + std::to_string(budget));
    }

    using Tuple = std::vector<std::int64_t>;
    const auto multiplicity = [p](const Tuple& t) { return static_cast<std::int64_t>(std::count(t.begin(), t.end(), p)); };
    std::map<std::int64_t, std::vector<Tuple>> source;  // z -> S^{p(z)}_{m|mp}
    std::map<std::int64_t, std::vector<Tuple>> target;  // z -> S^{p(z)}_{(m+1)|(m+1)p}
    counter.for_each(m, m * p, [&](const PrimePartition& s) {
        source[multiplicity(s.parts)].push_back(s.parts);
        return true;
    });
    std::size_t enumerated = 0;
    counter.for_each(m + 1, (m + 1) * p, [&](const PrimePartition& s) {
        target[multiplicity(s.parts)].push_back(s.parts);
        return ++enumerated <= budget;
    });

    for (std::int64_t z = 0; z <= m; ++z) {
        std::vector<Tuple> image;
        for (auto t : source[z]) {
            t.insert(std::upper_bound(t.begin(), t.end(), p), p);
            image.push_back(std::move(t));
        }
        std::sort(image.begin(), image.end());
        const auto domain_size = image.size();
        image.erase(std::unique(image.begin(), image.end()), image.end());
        auto expected = target[z + 1];
        std::sort(expected.begin(), expected.end());
        const bool injective = image.size() == domain_size;
        if (!injective || image != expected) {
            report.fail({{{"p", p}, {"m", m}, {"z", z}}, Count(image.size()), Count(expected.size())});
        }
    }
    return report;
}

inline IdentityReport check_bijection(std::int64_t p, std::int64_t m, const PrimeTable& table,
                                      std::size_t budget = kDefaultEnumerationBudget) {
    return check_bijection(p, m, ExactCounter(table), budget);
}

}  // namespace dgp

#endif  // DGP_IDENTITIES_HPP
