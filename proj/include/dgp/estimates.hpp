#ifndef DGP_ESTIMATES_HPP
#define DGP_ESTIMATES_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "count.hpp"
#include "errors.hpp"
#include "partitions.hpp"
#include "primes.hpp"

namespace dgp {

/// prod_{3 <= p <= cutoff} (1 - 1/(p-1)^2) over primes p.
inline double twin_prime_partial_product(std::int64_t cutoff) {
    if (cutoff < 3) return 1.0;
    const PrimeTable table(cutoff);
    double product = 1.0;
    for (const auto p : table.primes()) {
        if (p == 2) continue;
        const double d = static_cast<double>(p - 1);
        product *= 1.0 - 1.0 / (d * d);
    }
    return product;
}

/// Twin-prime constant, multiplying odd-prime factors until the last
/// factor's distance from 1 drops below `tolerance`.
inline double twin_prime_constant(double tolerance) {
    if (!(tolerance > 0.0 && tolerance < 1e-3)) {
        throw DomainError("twin prime tolerance must lie in (0, 1e-3), got " + std::to_string(tolerance));
    }
    // 1/(p-1)^2 < tol once p > 1 + 1/sqrt(tol); sieve a little past that.
    const auto bound = static_cast<std::int64_t>(1.0 + 1.0 / std::sqrt(tolerance)) + 1;
    std::int64_t limit = bound + bound / 8 + 64;
    for (;;) {
        const PrimeTable table(limit);
        double product = 1.0;
        for (const auto p : table.primes()) {
            if (p == 2) continue;
            const double d = static_cast<double>(p - 1);
            const double deviation = 1.0 / (d * d);
            product *= 1.0 - deviation;
            if (deviation < tolerance) return product;
        }
        limit *= 2;
    }
}

inline constexpr double kTwinPrimeTolerance = 1e-12;

/// Hardy-Littlewood estimate for g(E).
struct HLEstimate {
    std::int64_t even = 0;
    double value = 0.0;
    double singular_factor = 1.0;  // prod over odd p | E/2 of (p-1)/(p-2)
    double twin_constant_used = 0.0;
};

inline double singular_factor(std::int64_t even, const PrimeTable& table) {
    double factor = 1.0;
    for (const auto& [p, e] : factorize(even / 2, table).factors) {
        if (p == 2) continue;
        factor *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
    }
    return factor;
}

/// E * C / ln(E/2)^2 * prod_{odd p | E/2} (p-1)/(p-2), natural logarithm.
/// The twin constant is passed in so scans compute it once.
inline HLEstimate hl_estimate(std::int64_t even, const PrimeTable& table, double twin_constant) {
    if (even < 8 || even % 2 != 0) throw DomainError("hl_estimate needs an even E >= 8, got " + std::to_string(even));
    if (even > table.limit()) {
        throw OutOfRangeError("hl_estimate(" + std::to_string(even) + ") needs a prime table up to E, have " +
                              std::to_string(table.limit()));
    }
    HLEstimate out;
    out.even = even;
    out.twin_constant_used = twin_constant;
    out.singular_factor = singular_factor(even, table);
    const double log_half = std::log(static_cast<double>(even) / 2.0);
    out.value = static_cast<double>(even) * twin_constant / (log_half * log_half) * out.singular_factor;
    return out;
}

inline HLEstimate hl_estimate(std::int64_t even, const PrimeTable& table) {
    return hl_estimate(even, table, twin_prime_constant(kTwinPrimeTolerance));
}

/// ln(Y(m, km) * pi(m)) = log_C + c(k) * m, fitted by ordinary least squares.
struct FitResult {
    std::int64_t k = 0;
    double log_C = 0.0;
    double c_of_k = 0.0;
    std::pair<std::int64_t, std::int64_t> sample_range{0, 0};
    double rms_residual = 0.0;
    std::size_t inexact_conversions = 0;  // counts above 2^53 that did not convert exactly
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

inline LineFit least_squares_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw DataError("least squares needs at least two paired samples, got " + std::to_string(xs.size()));
    }
    const double count = static_cast<double>(xs.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
        sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
    }
    if (sxx == 0.0) throw DataError("least squares needs at least two distinct abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    double sq = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        sq += r * r;
    }
    fit.rms_residual = std::sqrt(sq / count);
    return fit;
}

/// Fit from explicit (m, Y) samples. Any zero count is rejected: inside the
/// conjecture's domain it would itself be a counterexample.
inline FitResult fit_exponential_samples(std::int64_t k, const std::vector<std::pair<std::int64_t, Count>>& samples,
                                         const PrimeTable& table) {
    if (k < 2) throw DomainError("fit needs k >= 2, got " + std::to_string(k));
    if (samples.empty()) throw DataError("fit needs a nonempty sample range");
    FitResult out;
    out.k = k;
    out.sample_range = {samples.front().first, samples.back().first};
    std::vector<double> xs, ys;
    for (const auto& [m, y] : samples) {
        if (m < 2) throw DomainError("fit samples need m >= 2, got " + std::to_string(m));
        if (y <= 0) {
            throw DataError("Y(" + std::to_string(m) + ", " + std::to_string(k * m) + ") = 0 inside the fit range");
        }
        if (!to_nearest_double(y).exact) ++out.inexact_conversions;
        xs.push_back(static_cast<double>(m));
        ys.push_back(natural_log(y) + std::log(static_cast<double>(table.prime_count(m))));
    }
    const auto line = least_squares_line(xs, ys);
    out.c_of_k = line.slope;
    out.log_C = line.intercept;
    out.rms_residual = line.rms_residual;
    return out;
}

inline FitResult fit_exponential(std::int64_t k, std::int64_t m_lo, std::int64_t m_hi, const CountTable& counts,
                                 const PrimeTable& table) {
    if (m_lo < 2 || m_hi < m_lo) {
        throw DomainError("fit range [" + std::to_string(m_lo) + ", " + std::to_string(m_hi) + "] must satisfy 2 <= lo <= hi");
    }
    std::vector<std::pair<std::int64_t, Count>> samples;
    for (std::int64_t m = m_lo; m <= m_hi; ++m) samples.emplace_back(m, counts.at(m, k * m));
    return fit_exponential_samples(k, samples, table);
}

}  // namespace dgp

#endif  // DGP_ESTIMATES_HPP
