#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumdiff/count.hpp"
#include "sumdiff/error.hpp"
#include "sumdiff/harness/config.hpp"
#include "sumdiff/harness/parallel.hpp"
#include "sumdiff/harness/stats.hpp"
#include "sumdiff/harness/trial.hpp"
#include "sumdiff/predict.hpp"

namespace sumdiff::harness {

struct SummaryStats {
    std::uint64_t n = 0;
    double p = 0.0;
    std::uint64_t trials = 0;
    std::optional<PredictionBundle> prediction;
    std::vector<StatSummary> stats;

    const StatSummary* find(const std::string& name) const {
        for (const auto& s : stats)
            if (s.name == name) return &s;
        return nullptr;
    }

    const StatSummary& at(const std::string& name) const {
        if (const auto* s = find(name)) return *s;
        throw UsageError("no statistic named '" + name + "'");
    }
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<TrialRecord> records;  // ordered by (N position in N_list, trial_index)
    std::vector<SummaryStats> summaries;
    bool partial = false;
    std::string error;
    double wall_time_s = 0.0;
};

inline std::string form_stat_name(const LinearForm& f, const std::string& what) { return "form[" + f.label() + "]." + what; }

// Pair operations spent on histograms across the whole run, at the expected |A|.
inline double histogram_work_estimate(const ExperimentConfig& cfg) {
    const auto& s = cfg.statistics;
    if (s.max_k == 0 && !s.y) return 0.0;
    double per_set = 1.0;  // diff histogram
    if (s.max_k > 0) {
        per_set += 0.5;                                 // sum histogram
        for (const auto& f : s.forms) per_set += f.is_binary() ? 1.0 : 0.0;
    }
    double total = 0.0;
    for (auto n : cfg.n_list) {
        const double size = static_cast<double>(n + 1) * p_of(cfg.family, n);
        total += static_cast<double>(cfg.trials) * size * size * per_set;
    }
    return total;
}

inline void check_resources(const ExperimentConfig& cfg) {
    const double work = histogram_work_estimate(cfg);
    if (work > enumeration_budget) {
        throw ResourceError("config needs about " + std::to_string(work) +
                            " histogram pair operations (budget 1e10); lower N, p or trials, or drop max_k/Y");
    }
}

inline SummaryStats summarize_records(const ExperimentConfig& cfg, std::uint64_t n, const std::vector<TrialRecord>& recs) {
    SummaryStats out;
    out.n = n;
    out.p = p_of(cfg.family, n);
    out.trials = recs.size();
    const auto& sel = cfg.statistics;
    std::vector<LinearForm> binary_forms;
    for (const auto& f : sel.forms)
        if (f.is_binary()) binary_forms.push_back(f);
    if (cfg.family.is_power_law()) out.prediction = asymptotic_bundle(n, cfg.family, binary_forms);

    auto column = [&](auto&& get) {
        std::vector<double> v;
        v.reserve(recs.size());
        for (const auto& r : recs) v.push_back(static_cast<double>(get(r)));
        return v;
    };
    auto pred = [&](auto&& get) -> std::optional<double> {
        if (!out.prediction) return std::nullopt;
        return get(*out.prediction);
    };

    out.stats.push_back(summarize("set_size", column([](const TrialRecord& r) { return r.set_size; }),
                                  static_cast<double>(n + 1) * out.p));
    const bool sizes = sel.sizes || sel.max_k > 0;
    if (sizes) {
        out.stats.push_back(summarize("sumset_size", column([](const TrialRecord& r) { return r.sumset_size; }),
                                      pred([](const PredictionBundle& b) { return b.sums; })));
        out.stats.push_back(summarize("diffset_size", column([](const TrialRecord& r) { return r.diffset_size; }),
                                      pred([](const PredictionBundle& b) { return b.diffs; })));
        std::vector<double> ratios;
        for (const auto& r : recs)
            if (r.sumset_size > 0) ratios.push_back(static_cast<double>(r.diffset_size) / static_cast<double>(r.sumset_size));
        out.stats.push_back(summarize("ratio_diff_sum", std::move(ratios),
                                      pred([](const PredictionBundle& b) { return b.diffs / b.sums; })));
    }
    if (sel.missing) {
        out.stats.push_back(summarize("missing_sums", column([](const TrialRecord& r) { return r.missing_sums; }),
                                      pred([](const PredictionBundle& b) { return b.missing_sums; })));
        out.stats.push_back(summarize("missing_diffs", column([](const TrialRecord& r) { return r.missing_diffs; }),
                                      pred([](const PredictionBundle& b) { return b.missing_diffs; })));
    }
    for (std::size_t i = 0; i < sel.forms.size(); ++i) {
        const auto& f = sel.forms[i];
        std::optional<double> image_pred, missing_pred;
        if (out.prediction && f.is_binary()) {
            for (const auto& fp : out.prediction->forms) {
                if (fp.form == f) {
                    image_pred = fp.image;
                    missing_pred = fp.missing;
                }
            }
        } else if (cfg.family.is_power_law() && !f.is_binary()) {
            const auto cp = conjecture_prediction(f, n, cfg.family);
            if (cp.value) (cp.is_missing_count ? missing_pred : image_pred) = *cp.value;
        }
        out.stats.push_back(summarize(form_stat_name(f, "size"),
                                      column([i](const TrialRecord& r) { return r.forms[i].image_size; }), image_pred));
        out.stats.push_back(summarize(form_stat_name(f, "missing"),
                                      column([i](const TrialRecord& r) { return r.forms[i].missing; }), missing_pred));
    }
    for (unsigned k = 1; k <= sel.max_k; ++k) {
        const auto ks = std::to_string(k);
        out.stats.push_back(summarize("xk_sum_" + ks, column([k](const TrialRecord& r) { return to_double(r.xk_sum[k - 1]); }),
                                      expected_tuple_count(n, out.p, k, HistKind::sum)));
        out.stats.push_back(summarize("xk_diff_" + ks, column([k](const TrialRecord& r) { return to_double(r.xk_diff[k - 1]); }),
                                      expected_tuple_count(n, out.p, k, HistKind::diff)));
        for (std::size_t i = 0; i < sel.forms.size(); ++i) {
            if (!sel.forms[i].is_binary()) continue;
            out.stats.push_back(summarize(form_stat_name(sel.forms[i], "xk_" + ks),
                                          column([i, k](const TrialRecord& r) { return to_double(r.forms[i].xk[k - 1]); }),
                                          expected_tuple_count(n, out.p, k, HistKind::form, sel.forms[i])));
        }
    }
    if (sel.y) out.stats.push_back(summarize("Y", column([](const TrialRecord& r) { return to_double(*r.y); })));
    return out;
}

// Trials run in parallel; records are merged by trial_index so every output is
// independent of the thread count. A failing trial stops the run and the result is
// flagged partial.
inline ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    check_resources(config);
    const auto start = std::chrono::steady_clock::now();
    ExperimentResult result;
    result.config = config;
    for (auto n : config.n_list) {
        std::vector<std::optional<TrialRecord>> slots(static_cast<std::size_t>(config.trials));
        const auto failure = parallel_for(slots.size(), config.threads,
                                          [&](std::size_t i) { slots[i] = run_trial(config, n, i); });
        // On failure keep only the prefix before the failing index, so partial output
        // does not depend on thread timing.
        const std::size_t keep = failure ? failure->index : slots.size();
        std::vector<TrialRecord> done;
        for (std::size_t i = 0; i < keep; ++i)
            if (slots[i]) done.push_back(std::move(*slots[i]));
        if (failure) {
            result.partial = true;
            result.error = "N=" + std::to_string(n) + " trial " + std::to_string(failure->index) + ": " + failure->message;
            for (auto& r : done) result.records.push_back(std::move(r));
            break;
        }
        result.summaries.push_back(summarize_records(config, n, done));
        for (auto& r : done) result.records.push_back(std::move(r));
    }
    result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace sumdiff::harness
