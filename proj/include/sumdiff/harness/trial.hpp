#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumdiff/count.hpp"
#include "sumdiff/error.hpp"
#include "sumdiff/harness/config.hpp"
#include "sumdiff/randmodel.hpp"
#include "sumdiff/setcore.hpp"

namespace sumdiff::harness {

struct FormMeasurement {
    std::uint64_t image_size = 0;
    std::uint64_t missing = 0;  // (sum |u_i|) N + 1 - |f(A)|
    std::vector<Count> xk;      // X'_{k,f}, k = 1..max_k; binary forms only

    friend bool operator==(const FormMeasurement&, const FormMeasurement&) = default;
};

struct TrialRecord {
    std::uint64_t n = 0;
    double p = 0.0;
    std::uint64_t trial_index = 0;
    std::uint64_t set_size = 0;
    std::uint64_t sumset_size = 0;
    std::uint64_t diffset_size = 0;
    std::uint64_t missing_sums = 0;
    std::uint64_t missing_diffs = 0;
    std::vector<FormMeasurement> forms;
    std::vector<Count> xk_sum;   // X_k
    std::vector<Count> xk_diff;  // X'_k
    std::optional<Count> y;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

// Holds for every m >= 1: |image - sum_{k<=m} (-1)^{k-1} X_k| <= X_m.
inline bool alternating_bound_holds(std::uint64_t image, std::span<const Count> xk, unsigned m) {
    __int128 partial = 0;
    for (unsigned k = 1; k <= m; ++k) {
        const auto x = static_cast<__int128>(xk[k - 1]);
        partial += (k % 2 == 1) ? x : -x;
    }
    __int128 gap = static_cast<__int128>(image) - partial;
    if (gap < 0) gap = -gap;
    return gap <= static_cast<__int128>(xk[m - 1]);
}

// Pairs of distinct m < n pairs sharing a positive difference: sum_{d>0} C(R(d), 2).
inline Count coincident_difference_pairs(const RepHistogram& diff) {
    return tuple_statistic(diff, 2) / 2;
}

namespace detail {

inline void check_record(const TrialRecord& r, bool have_sizes, unsigned max_k) {
    const std::uint64_t slots = 2 * r.n + 1;
    auto fail = [&](const std::string& what) {
        throw InvariantError("trial " + std::to_string(r.trial_index) + " at N=" + std::to_string(r.n) + ": " + what);
    };
    if (!have_sizes) return;
    if (r.sumset_size + r.missing_sums != slots || r.diffset_size + r.missing_diffs != slots)
        fail("complement counts do not add up to 2N+1");
    for (unsigned m = 1; m <= max_k; ++m) {
        if (!alternating_bound_holds(r.sumset_size, r.xk_sum, m)) fail("sumset alternating-sum bound, m=" + std::to_string(m));
        const std::uint64_t nonzero_diffs = r.diffset_size == 0 ? 0 : r.diffset_size - 1;
        if (!alternating_bound_holds(nonzero_diffs, r.xk_diff, m)) fail("diffset alternating-sum bound, m=" + std::to_string(m));
        for (const auto& f : r.forms)
            if (!f.xk.empty() && !alternating_bound_holds(f.image_size, f.xk, m))
                fail("form image alternating-sum bound, m=" + std::to_string(m));
    }
}

} // namespace detail

// Statistics of one sampled set. A pure function of (config.seed, N, trial_index,
// family, statistics).
inline TrialRecord run_trial(const ExperimentConfig& config, std::uint64_t n, std::uint64_t trial_index) {
    const auto& stats = config.statistics;
    TrialRecord r;
    r.n = n;
    r.trial_index = trial_index;
    r.p = p_of(config.family, n);
    const IntegerSet a = sample(n, r.p, {config.seed, trial_index});
    r.set_size = a.size();

    const bool need_sizes = stats.sizes || stats.missing || stats.max_k > 0;
    if (need_sizes) {
        r.sumset_size = sumset(a).size();
        r.diffset_size = diffset(a).size();
        r.missing_sums = 2 * n + 1 - r.sumset_size;
        r.missing_diffs = 2 * n + 1 - r.diffset_size;
    }
    for (const auto& f : stats.forms) {
        FormMeasurement m;
        m.image_size = form_image(a, f).size();
        m.missing = static_cast<std::uint64_t>(f.abs_sum()) * n + 1 - m.image_size;
        r.forms.push_back(std::move(m));
    }
    if (stats.max_k > 0 || stats.y) {
        const RepHistogram diff = rep_histogram(a, HistKind::diff);
        if (stats.y) r.y = coincident_difference_pairs(diff);
        if (stats.max_k > 0) {
            const RepHistogram sum = rep_histogram(a, HistKind::sum);
            for (unsigned k = 1; k <= stats.max_k; ++k) {
                r.xk_sum.push_back(tuple_statistic(sum, k));
                r.xk_diff.push_back(tuple_statistic(diff, k));
            }
            for (std::size_t i = 0; i < stats.forms.size(); ++i) {
                if (!stats.forms[i].is_binary()) continue;
                const RepHistogram h = rep_histogram(a, HistKind::form, stats.forms[i]);
                for (unsigned k = 1; k <= stats.max_k; ++k) r.forms[i].xk.push_back(tuple_statistic(h, k));
            }
        }
    }
    detail::check_record(r, need_sizes, stats.max_k);
    return r;
}

} // namespace sumdiff::harness
