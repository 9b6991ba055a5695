#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "sumdiff/bounds.hpp"
#include "sumdiff/count.hpp"
#include "sumdiff/harness/parallel.hpp"
#include "sumdiff/harness/trial.hpp"
#include "sumdiff/randmodel.hpp"
#include "sumdiff/setcore.hpp"

namespace sumdiff::harness {

struct BoundsVerification {
    BoundReport report;
    std::uint64_t trials = 0;
    std::uint64_t outside_interval = 0;  // |A| outside [card_lo, card_hi]
    std::uint64_t y_exceeded = 0;        // Y > y_threshold
    double freq_interval = 0.0;
    double freq_y = 0.0;
    // Empirical rate above the bound plus four binomial standard errors.
    bool violation_interval = false;
    bool violation_y = false;

    bool interval_within_bound() const { return freq_interval <= report.p1; }
    bool y_within_bound() const { return freq_y <= report.p2; }
    bool any_violation() const { return violation_interval || violation_y; }
};

inline BoundsVerification verify_bounds(double c, double delta, double g_exp, std::uint64_t n, std::uint64_t trials,
                                        std::uint64_t seed, unsigned threads = 0) {
    BoundsVerification out;
    out.report = bound_report(c, delta, g_exp, n);
    if (trials == 0) throw ParameterError("verify_bounds: trials must be >= 1");
    out.trials = trials;
    const double p = p_of(PFamily::power_law(c, delta), n);
    std::vector<std::uint8_t> outside(static_cast<std::size_t>(trials), 0), exceeded(static_cast<std::size_t>(trials), 0);
    const auto failure = parallel_for(outside.size(), threads, [&](std::size_t t) {
        const IntegerSet a = sample(n, p, {seed, t});
        const auto size = static_cast<double>(a.size());
        outside[t] = size < out.report.card_lo || size > out.report.card_hi;
        const Count y = coincident_difference_pairs(rep_histogram(a, HistKind::diff));
        exceeded[t] = to_double(y) > out.report.y_threshold;
    });
    if (failure) std::rethrow_exception(failure->error);
    for (std::size_t t = 0; t < outside.size(); ++t) {
        out.outside_interval += outside[t];
        out.y_exceeded += exceeded[t];
    }
    const double tn = static_cast<double>(trials);
    out.freq_interval = static_cast<double>(out.outside_interval) / tn;
    out.freq_y = static_cast<double>(out.y_exceeded) / tn;
    auto se = [&](double q) { return std::sqrt(std::min(q, 1.0) * (1.0 - std::min(q, 1.0)) / tn); };
    out.violation_interval = out.freq_interval > out.report.p1 + 4.0 * se(out.report.p1);
    out.violation_y = out.freq_y > out.report.p2 + 4.0 * se(out.report.p2);
    return out;
}

} // namespace sumdiff::harness
