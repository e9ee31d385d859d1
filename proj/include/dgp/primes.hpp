#ifndef DGP_PRIMES_HPP
#define DGP_PRIMES_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace dgp {

/// Immutable Sieve of Eratosthenes up to an inclusive limit.
///
/// Primality is a bit lookup and pi(x) is answered from a per-word prefix
/// count plus one popcount, so both are O(1). The table never grows: queries
/// beyond `limit()` throw OutOfRangeError. Safe for concurrent readers.
class PrimeTable {
public:
    explicit PrimeTable(std::int64_t limit) : limit_(limit) {
        if (limit < 2) throw DomainError("prime table limit must be >= 2, got " + std::to_string(limit));
        const auto words = static_cast<std::size_t>(limit / 64 + 1);
        bits_.assign(words, ~std::uint64_t{0});
        clear_bit(0);
        clear_bit(1);
        for (std::int64_t i = 2; i * i <= limit; ++i) {
            if (!test_bit(i)) continue;
            for (std::int64_t j = i * i; j <= limit; j += i) clear_bit(j);
        }
        // Bits past the limit in the final word must not be counted.
        const auto tail = static_cast<unsigned>(limit % 64) + 1;
        if (tail < 64) bits_.back() &= (std::uint64_t{1} << tail) - 1;

        prefix_.resize(words);
        std::uint32_t running = 0;
        for (std::size_t w = 0; w < words; ++w) {
            prefix_[w] = running;
            running += static_cast<std::uint32_t>(std::popcount(bits_[w]));
        }
        primes_.reserve(running);
        for (std::size_t w = 0; w < words; ++w) {
            for (auto word = bits_[w]; word != 0; word &= word - 1) {
                primes_.push_back(static_cast<std::int64_t>(w * 64 + std::countr_zero(word)));
            }
        }
    }

    std::int64_t limit() const noexcept { return limit_; }
    std::span<const std::int64_t> primes() const noexcept { return primes_; }

    bool is_prime(std::int64_t x) const {
        check_range(x);
        return test_bit(x);
    }

    /// Number of primes <= x.
    std::int64_t prime_count(std::int64_t x) const {
        check_range(x);
        const auto w = static_cast<std::size_t>(x / 64);
        const auto bit = static_cast<unsigned>(x % 64);
        const std::uint64_t mask = bit == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (bit + 1)) - 1;
        return prefix_[w] + std::popcount(bits_[w] & mask);
    }

    /// Primes p with p <= x, as a prefix of primes().
    std::span<const std::int64_t> primes_up_to(std::int64_t x) const {
        if (x < 2) return {};
        const auto count = static_cast<std::size_t>(prime_count(x < limit_ ? x : limit_));
        return std::span<const std::int64_t>(primes_).first(count);
    }

private:
    void check_range(std::int64_t x) const {
        if (x < 0 || x > limit_) {
            throw OutOfRangeError("value " + std::to_string(x) + " outside prime table [0, " +
                                  std::to_string(limit_) + "]");
        }
    }
    bool test_bit(std::int64_t i) const noexcept {
        return (bits_[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1;
    }
    void clear_bit(std::int64_t i) noexcept {
        bits_[static_cast<std::size_t>(i / 64)] &= ~(std::uint64_t{1} << (i % 64));
    }

    std::int64_t limit_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint32_t> prefix_;
    std::vector<std::int64_t> primes_;
};

inline PrimeTable build_prime_table(std::int64_t limit) { return PrimeTable(limit); }

struct PrimePower {
    std::int64_t prime;
    int exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n = p_1^a_1 * ... * p_k^a_k with p_1 < ... < p_k.
struct Factorization {
    std::int64_t base = 0;
    std::vector<PrimePower> factors;

    std::int64_t product() const {
        std::int64_t v = 1;
        for (const auto& f : factors) {
            for (int i = 0; i < f.exponent; ++i) v *= f.prime;
        }
        return v;
    }
};

inline Factorization factorize(std::int64_t n, const PrimeTable& table) {
    if (n < 2) throw DomainError("factorize needs n >= 2, got " + std::to_string(n));
    if (n > table.limit()) {
        throw OutOfRangeError("factorize(" + std::to_string(n) + ") needs a table up to n, have " +
                              std::to_string(table.limit()));
    }
    Factorization out{n, {}};
    std::int64_t rest = n;
    for (const auto p : table.primes()) {
        if (p * p > rest) break;
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        out.factors.push_back({p, e});
    }
    if (rest > 1) out.factors.push_back({rest, 1});
    return out;
}

/// Every m with 1 < m < n and m | n, ascending.
inline std::vector<std::int64_t> proper_divisors(std::int64_t n) {
    if (n < 2) throw DomainError("proper_divisors needs n >= 2, got " + std::to_string(n));
    std::vector<std::int64_t> low, high;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        low.push_back(d);
        if (d != n / d) high.push_back(n / d);
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

}  // namespace dgp

#endif  // DGP_PRIMES_HPP
