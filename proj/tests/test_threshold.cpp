#include <gtest/gtest.h>

#include <cmath>

#include "sumdiff/threshold.hpp"

using namespace sumdiff;

namespace {

LinearForm F(const char* s) { return LinearForm::parse(s); }

// Independent root locator: scan g_{4,3}(c^2/4) - g_{5,1}(c^2/5) in long double on a
// 1e-4 grid, then refine the bracketing cell by secant steps.
double scan_root(long double u1, long double v1, long double u2, long double v2) {
    auto g = [](long double u, long double v, long double x) {
        return (u + v) - 2.0L * v * (1.0L - std::exp(-x)) / x - (u - v) * std::exp(-x);
    };
    auto h = [&](long double c) { return g(u1, v1, c * c / u1) - g(u2, v2, c * c / u2); };
    for (long double c = 0.05L; c < 20.0L; c += 1e-4L) {
        if (h(c) < 0 && h(c + 1e-4L) >= 0) {
            long double a = c, b = c + 1e-4L;
            for (int i = 0; i < 60; ++i) {
                const long double m = b - h(b) * (b - a) / (h(b) - h(a));
                if (h(m) < 0) a = m;
                else b = m;
                if (b - a < 1e-16L) break;
            }
            return static_cast<double>(0.5L * (a + b));
        }
    }
    return -1.0;
}

} // namespace

TEST(ClassifyPair, ReferenceCases) {
    const auto r1 = classify_pair(F("2,-1"), F("1,-1"));
    EXPECT_EQ(r1.kind, DominationCase::case_i);
    EXPECT_EQ(r1.dominator_below, Side::first);
    EXPECT_FALSE(r1.c_threshold);

    const auto r2 = classify_pair(F("4,-3"), F("5,-1"));
    EXPECT_EQ(r2.kind, DominationCase::case_ii);
    ASSERT_TRUE(r2.c_threshold);
    EXPECT_GT(*r2.c_threshold, 0.0);
    EXPECT_EQ(r2.dominator_below, Side::second);
    EXPECT_EQ(r2.dominator_above, Side::first);

    EXPECT_EQ(classify_pair(F("3,2"), F("3,-2")).kind, DominationCase::incomparable);
    EXPECT_THROW(classify_pair(F("1,1"), F("2,-1")), ValidationError);
    EXPECT_THROW(classify_pair(F("1,1,-1"), F("2,-1")), ValidationError);
}

TEST(ClassifyPair, EveryFormDominatesUnitDifference) {
    for (const char* s : {"2,-1", "3,1", "3,-2", "5,4", "7,-3"}) {
        const auto r = classify_pair(F(s), F("1,-1"));
        EXPECT_EQ(r.kind, DominationCase::case_i) << s;
        EXPECT_EQ(r.dominator_below, Side::first) << s;
    }
}

TEST(SolveThreshold, MatchesIndependentScan) {
    const double root = solve_threshold(F("4,-3"), F("5,-1"));
    EXPECT_NEAR(root, scan_root(4, 3, 5, 1), 1e-9);
    EXPECT_NEAR(root, 0.957060389772543, 1e-9);
}

TEST(SolveThreshold, RootSeparationAndSymmetry) {
    const std::pair<const char*, const char*> pairs[] = {{"4,-3", "5,-1"}, {"5,-1", "4,-3"}, {"7,-6", "9,-1"}, {"3,-2", "4,-1"}};
    for (const auto& [a, b] : pairs) {
        const auto f = F(a);
        const auto g = F(b);
        if (classify_pair(f, g).kind != DominationCase::case_ii) continue;
        const double c = solve_threshold(f, g);
        const LinearForm& big = (f.u() + f.abs_v() > g.u() + g.abs_v()) ? f : g;
        const LinearForm& small = (&big == &f) ? g : f;
        EXPECT_LT(form_gap(big, small, c / 2), 0.0) << a << " " << b;
        EXPECT_GT(form_gap(big, small, 2 * c), 0.0) << a << " " << b;
    }
    const double base = solve_threshold(F("4,-3"), F("5,-1"));
    EXPECT_DOUBLE_EQ(solve_threshold(F("4,3"), F("5,-1")), base);
    EXPECT_DOUBLE_EQ(solve_threshold(F("4,-3"), F("5,1")), base);
    EXPECT_DOUBLE_EQ(solve_threshold(F("5,-1"), F("4,-3")), base);
    EXPECT_THROW(solve_threshold(F("2,-1"), F("1,-1")), UsageError);
}

TEST(FormGap, SmallCSeriesAgreesWithClosedForm) {
    const auto f = F("4,-3");
    const auto g = F("5,-1");
    // Leading behaviour -(alpha_f - alpha_g) c^4.
    const double da = alpha(4, 3).to_double() - alpha(5, 1).to_double();
    for (double c : {1e-3, 5e-3, 0.02}) EXPECT_NEAR(form_gap(f, g, c) / std::pow(c, 4), -da, 1e-3) << c;
    // Continuity across the switch between series and closed form.
    const double cx = std::sqrt(gap_series_limit * 4.0);
    const double below = form_gap(f, g, cx * (1 - 1e-12));
    const double above = form_gap(f, g, cx * (1 + 1e-12));
    EXPECT_NEAR(below / above, 1.0, 1e-10);
}

TEST(DominatorAt, SidesOfThreshold) {
    const auto f = F("4,-3");
    const auto g = F("5,-1");
    const double c = solve_threshold(f, g);
    EXPECT_EQ(dominator_at(f, g, c / 10), Side::second);
    EXPECT_EQ(dominator_at(f, g, c * 10), Side::first);
    for (double x : {0.01, 0.5, 3.0}) EXPECT_EQ(dominator_at(F("3,-2"), F("3,2"), x), Side::same);
}

TEST(RegimeDominator, Rules) {
    EXPECT_EQ(*regime_dominator(F("3,-1"), F("2,-1"), PFamily::power_law(1.0, 0.3)).dominator, Side::first);
    EXPECT_EQ(*regime_dominator(F("2,-1"), F("1,-1"), PFamily::power_law(1.0, 0.55)).dominator, Side::first);
    const auto broken = regime_dominator(F("4,-3"), F("5,-1"), PFamily::power_law(1.0, 0.7));
    EXPECT_TRUE(broken.model_breakdown);
    EXPECT_FALSE(broken.dominator);
    EXPECT_EQ(*regime_dominator(F("4,-3"), F("5,-1"), PFamily::power_law(0.1, 0.5)).dominator, Side::second);
    EXPECT_EQ(*regime_dominator(F("4,-3"), F("5,-1"), PFamily::power_law(5.0, 0.5)).dominator, Side::first);
    EXPECT_THROW(regime_dominator(F("4,-3"), F("5,-1"), PFamily::explicit_probability(0.1)), UsageError);
}

TEST(RationalCompare, Exact) {
    EXPECT_TRUE(Rational(3, 32) > Rational(7, 75));
    EXPECT_EQ(Rational(2, 4), Rational(1, 2));
    EXPECT_EQ(Rational(5, 24).to_string(), "5/24");
}
