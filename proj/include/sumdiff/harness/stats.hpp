#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumdiff/error.hpp"

namespace sumdiff::harness {

struct StatSummary {
    std::string name;
    std::uint64_t count = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double min = 0.0;
    double max = 0.0;
    double q05 = 0.0;
    double q50 = 0.0;
    double q95 = 0.0;
    std::optional<double> prediction;
    std::optional<double> relative_error;  // (mean - prediction) / prediction
};

// Linear interpolation between order statistics (R type 7).
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline StatSummary summarize(std::string name, std::vector<double> values, std::optional<double> prediction = std::nullopt) {
    StatSummary s;
    s.name = std::move(name);
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.std_error = std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
    }
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    s.q05 = quantile_sorted(values, 0.05);
    s.q50 = quantile_sorted(values, 0.50);
    s.q95 = quantile_sorted(values, 0.95);
    if (prediction) {
        s.prediction = prediction;
        if (*prediction != 0.0) s.relative_error = (s.mean - *prediction) / *prediction;
    }
    return s;
}

} // namespace sumdiff::harness
