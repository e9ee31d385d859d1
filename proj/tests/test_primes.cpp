#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "dgp/primes.hpp"
#include "oracle.hpp"

using dgp::PrimeTable;

TEST(PrimeTable, SmallListsByInspection) {
    const auto t30 = dgp::build_prime_table(30);
    const std::vector<std::int64_t> expected{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    EXPECT_EQ(std::vector<std::int64_t>(t30.primes().begin(), t30.primes().end()), expected);

    const auto t2 = dgp::build_prime_table(2);
    ASSERT_EQ(t2.primes().size(), 1u);
    EXPECT_EQ(t2.primes()[0], 2);
}

TEST(PrimeTable, RejectsLimitBelowTwo) {
    EXPECT_THROW(PrimeTable(1), dgp::DomainError);
    EXPECT_THROW(PrimeTable(-5), dgp::DomainError);
}

TEST(PrimeTable, CountsAgainstTrialDivision) {
    const PrimeTable t(1000);
    EXPECT_EQ(t.prime_count(100), 25);
    EXPECT_EQ(t.prime_count(1000), 168);
    EXPECT_EQ(t.prime_count(100), oracle::prime_count(100));
    EXPECT_EQ(t.prime_count(10), 4);
    EXPECT_EQ(t.prime_count(1), 0);
    EXPECT_EQ(t.prime_count(0), 0);
}

TEST(PrimeTable, Membership) {
    const PrimeTable t(100);
    EXPECT_TRUE(t.is_prime(2));
    EXPECT_FALSE(t.is_prime(1));
    EXPECT_FALSE(t.is_prime(0));
    EXPECT_TRUE(t.is_prime(97));
    EXPECT_FALSE(t.is_prime(100));
}

TEST(PrimeTable, OutOfRangeNeverExtends) {
    const PrimeTable t(100);
    EXPECT_THROW(t.is_prime(101), dgp::OutOfRangeError);
    EXPECT_THROW(t.prime_count(101), dgp::OutOfRangeError);
    EXPECT_THROW(t.is_prime(-1), dgp::OutOfRangeError);
    EXPECT_EQ(t.limit(), 100);
}

// Word boundaries of the bit array are where off-by-one bugs live.
TEST(PrimeTable, ConsistentAcrossLimits) {
    for (std::int64_t limit : {2, 3, 63, 64, 65, 127, 128, 129, 1000, 4099}) {
        const PrimeTable t(limit);
        std::int64_t running = 0;
        for (std::int64_t x = 0; x <= limit; ++x) {
            const bool prime = oracle::is_prime(x);
            running += prime;
            ASSERT_EQ(t.is_prime(x), prime) << "x=" << x << " limit=" << limit;
            ASSERT_EQ(t.prime_count(x), running) << "x=" << x << " limit=" << limit;
            if (x >= 1) ASSERT_EQ(t.prime_count(x) - t.prime_count(x - 1) == 1, prime);
        }
        EXPECT_EQ(static_cast<std::int64_t>(t.primes().size()), t.prime_count(limit));
    }
}

TEST(PrimeTable, PrimesAreStrictlyIncreasingAndComplete) {
    const PrimeTable t(20000);
    const auto ps = t.primes();
    for (std::size_t i = 1; i < ps.size(); ++i) ASSERT_LT(ps[i - 1], ps[i]);
    EXPECT_EQ(ps.size(), oracle::primes_up_to(20000).size());
    EXPECT_EQ(t.primes_up_to(10).size(), 4u);
    EXPECT_TRUE(t.primes_up_to(1).empty());
}

TEST(Factorize, WorkedExamples) {
    const PrimeTable t(100);
    EXPECT_EQ(dgp::factorize(36, t).factors, (std::vector<dgp::PrimePower>{{2, 2}, {3, 2}}));
    EXPECT_EQ(dgp::factorize(15, t).factors, (std::vector<dgp::PrimePower>{{3, 1}, {5, 1}}));
    EXPECT_EQ(dgp::factorize(97, t).factors, (std::vector<dgp::PrimePower>{{97, 1}}));
    EXPECT_EQ(dgp::factorize(56, t).factors, (std::vector<dgp::PrimePower>{{2, 3}, {7, 1}}));
}

TEST(Factorize, Errors) {
    const PrimeTable t(100);
    EXPECT_THROW(dgp::factorize(1, t), dgp::DomainError);
    EXPECT_THROW(dgp::factorize(101, t), dgp::OutOfRangeError);
}

TEST(Factorize, ReconstructsEveryBase) {
    const PrimeTable t(10000);
    for (std::int64_t n = 2; n <= 10000; ++n) {
        const auto f = dgp::factorize(n, t);
        ASSERT_EQ(f.product(), n);
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            ASSERT_TRUE(t.is_prime(f.factors[i].prime));
            ASSERT_GE(f.factors[i].exponent, 1);
            if (i) ASSERT_LT(f.factors[i - 1].prime, f.factors[i].prime);
        }
    }
}

TEST(ProperDivisors, Examples) {
    EXPECT_EQ(dgp::proper_divisors(36), (std::vector<std::int64_t>{2, 3, 4, 6, 9, 12, 18}));
    EXPECT_EQ(dgp::proper_divisors(56), (std::vector<std::int64_t>{2, 4, 7, 8, 14, 28}));
    EXPECT_TRUE(dgp::proper_divisors(7).empty());
    EXPECT_TRUE(dgp::proper_divisors(2).empty());
    EXPECT_TRUE(dgp::proper_divisors(3).empty());
    EXPECT_EQ(dgp::proper_divisors(4), (std::vector<std::int64_t>{2}));
    EXPECT_THROW(dgp::proper_divisors(1), dgp::DomainError);
}

TEST(ProperDivisors, MatchesLinearScan) {
    const PrimeTable t(3000);
    for (std::int64_t n = 2; n <= 3000; ++n) {
        std::vector<std::int64_t> scan;
        for (std::int64_t m = 2; m < n; ++m) {
            if (n % m == 0) scan.push_back(m);
        }
        ASSERT_EQ(dgp::proper_divisors(n), scan) << n;
        ASSERT_EQ(scan.empty(), n <= 3 || t.is_prime(n)) << n;
    }
}
