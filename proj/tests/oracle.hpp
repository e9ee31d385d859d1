#ifndef DGP_TESTS_ORACLE_HPP
#define DGP_TESTS_ORACLE_HPP

// Reference implementations that share no code with the library: trial
// division and plain recursive search.

#include <cstdint>
#include <vector>

namespace oracle {

inline bool is_prime(std::int64_t x) {
    if (x < 2) return false;
    for (std::int64_t d = 2; d * d <= x; ++d) {
        if (x % d == 0) return false;
    }
    return true;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t x = 2; x <= n; ++x) {
        if (is_prime(x)) out.push_back(x);
    }
    return out;
}

inline std::int64_t prime_count(std::int64_t x) {
    std::int64_t c = 0;
    for (std::int64_t v = 2; v <= x; ++v) c += is_prime(v);
    return c;
}

// Nondecreasing prime tuples of `parts` parts summing to `sum`, each part >= floor.
inline void brute_force(std::int64_t parts, std::int64_t sum, std::int64_t floor, std::vector<std::int64_t>& prefix,
                        std::vector<std::vector<std::int64_t>>& out) {
    if (parts == 0) {
        if (sum == 0) out.push_back(prefix);
        return;
    }
    for (std::int64_t p = floor; p * parts <= sum; ++p) {
        if (!is_prime(p)) continue;
        prefix.push_back(p);
        brute_force(parts - 1, sum - p, p, prefix, out);
        prefix.pop_back();
    }
}

inline std::vector<std::vector<std::int64_t>> brute_force_partitions(std::int64_t m, std::int64_t n) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> prefix;
    brute_force(m, n, 2, prefix, out);
    return out;
}

inline std::int64_t brute_force_count(std::int64_t parts, std::int64_t sum, std::int64_t floor = 2) {
    if (parts == 0) return sum == 0 ? 1 : 0;
    std::int64_t total = 0;
    for (std::int64_t p = floor; p * parts <= sum; ++p) {
        if (is_prime(p)) total += brute_force_count(parts - 1, sum - p, p);
    }
    return total;
}

inline std::int64_t brute_force_multiplicity(std::int64_t m, std::int64_t n, std::int64_t p, std::int64_t z) {
    std::int64_t hits = 0;
    for (const auto& t : brute_force_partitions(m, n)) {
        std::int64_t c = 0;
        for (auto v : t) c += (v == p);
        hits += (c == z);
    }
    return hits;
}

}  // namespace oracle

#endif  // DGP_TESTS_ORACLE_HPP
