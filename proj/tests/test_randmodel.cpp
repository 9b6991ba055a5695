#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sumdiff/randmodel.hpp"

using namespace sumdiff;

// Known-answer vectors published with Random123.
TEST(Philox, KnownAnswers) {
    EXPECT_EQ(Philox4x32::apply({0, 0, 0, 0}, {0, 0}),
              (Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::apply({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::apply({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(PFamily, Evaluation) {
    EXPECT_DOUBLE_EQ(p_of(PFamily::power_law(1.0, 0.5), 10000), 0.01);
    EXPECT_DOUBLE_EQ(p_of(PFamily::explicit_probability(0.5), 7), 0.5);
    EXPECT_DOUBLE_EQ(p_of(PFamily::explicit_probability(0.5), 1000000), 0.5);
    EXPECT_THROW(p_of(PFamily::power_law(2.0, 0.0), 5), ParameterError);
    EXPECT_THROW(PFamily::explicit_probability(1.0), ParameterError);
    EXPECT_THROW(PFamily::explicit_probability(0.0), ParameterError);
    EXPECT_THROW(PFamily::power_law(-1.0, 0.5), ParameterError);
    EXPECT_THROW(PFamily::power_law(1.0, 1.5), ParameterError);
}

TEST(Sample, Deterministic) {
    const auto a = sample(5000, 0.3, {42, 7});
    const auto b = sample(5000, 0.3, {42, 7});
    EXPECT_EQ(a, b);
    EXPECT_NE(a, sample(5000, 0.3, {42, 8}));
    EXPECT_NE(a, sample(5000, 0.3, {43, 7}));
    EXPECT_EQ(a.lo(), 0);
    EXPECT_EQ(a.hi(), 5000);
}

// Raising p only adds elements when the key is fixed.
TEST(Sample, MonotoneInP) {
    const auto small = sample(20000, 0.01, {1, 3});
    const auto big = sample(20000, 0.02, {1, 3});
    small.for_each([&](std::int64_t x) { EXPECT_TRUE(big.contains(x)); });
}

TEST(Sample, BinomialSize) {
    const std::uint64_t n = 1000000;
    const double p = 0.01;
    const int trials = 200;
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double k = static_cast<double>(sample(n, p, {2024, static_cast<std::uint64_t>(t)}).size());
        sum += k;
        sumsq += k * k;
    }
    const double mean = sum / trials;
    const double var = sumsq / trials - mean * mean;
    const double expect = static_cast<double>(n + 1) * p;
    const double sd = std::sqrt(expect * (1.0 - p));
    EXPECT_LT(std::abs(mean - expect), 4.0 * sd / std::sqrt(trials));
    EXPECT_NEAR(std::sqrt(var), sd, 0.2 * sd);
}

TEST(Sample, MarginalInclusion) {
    const int trials = 100000;
    const double p = 0.3;
    int hits0 = 0, hits7 = 0;
    for (int t = 0; t < trials; ++t) {
        const auto a = sample(8, p, {99, static_cast<std::uint64_t>(t)});
        hits0 += a.contains(0);
        hits7 += a.contains(7);
    }
    const double tol = 4.0 * std::sqrt(p * (1 - p) / trials);
    EXPECT_NEAR(static_cast<double>(hits0) / trials, p, tol);
    EXPECT_NEAR(static_cast<double>(hits7) / trials, p, tol);
}

TEST(Sample, AdjacentTrialsUncorrelated) {
    const int trials = 10000;
    std::vector<double> k(trials);
    for (int t = 0; t < trials; ++t) k[t] = static_cast<double>(sample(2000, 0.1, {5, static_cast<std::uint64_t>(t)}).size());
    double mean = 0.0;
    for (double x : k) mean += x;
    mean /= trials;
    double num = 0.0, den = 0.0;
    for (int t = 0; t < trials; ++t) {
        den += (k[t] - mean) * (k[t] - mean);
        if (t + 1 < trials) num += (k[t] - mean) * (k[t + 1] - mean);
    }
    EXPECT_LT(std::abs(num / den), 3.0 / std::sqrt(trials));
}

TEST(Sample, RejectsBadP) {
    EXPECT_THROW(sample(10, 0.0, {}), ParameterError);
    EXPECT_THROW(sample(10, 1.0, {}), ParameterError);
}
