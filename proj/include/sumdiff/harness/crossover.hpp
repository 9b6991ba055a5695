#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "sumdiff/error.hpp"
#include "sumdiff/harness/parallel.hpp"
#include "sumdiff/randmodel.hpp"
#include "sumdiff/setcore.hpp"
#include "sumdiff/threshold.hpp"

namespace sumdiff::harness {

struct CrossoverPoint {
    double c = 0.0;
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t first_wins = 0;   // |F(A)| > |G(A)|
    std::uint64_t second_wins = 0;  // |F(A)| < |G(A)|
    std::uint64_t ties = 0;
    double frequency = 0.0;         // first_wins / trials
};

struct CrossoverResult {
    std::vector<CrossoverPoint> points;  // ascending c
    std::optional<double> crossover;
    bool inconclusive = true;
};

// The c at which the frequency first crosses 1/2, interpolated linearly between
// neighbouring grid points.
inline std::optional<double> interpolate_half_crossing(const std::vector<CrossoverPoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].frequency == 0.5) return pts[i].c;
        if (i + 1 == pts.size()) break;
        const double a = pts[i].frequency - 0.5;
        const double b = pts[i + 1].frequency - 0.5;
        if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
            const double t = a / (a - b);
            return pts[i].c + t * (pts[i + 1].c - pts[i].c);
        }
    }
    return std::nullopt;
}

// For each c, estimates P(|F(A)| > |G(A)|) at p = c N^-1/2. Trial t uses the same sampler
// key at every c, so the sets grow monotonically along the grid.
inline CrossoverResult empirical_crossover(const LinearForm& f, const LinearForm& g, std::uint64_t n,
                                           std::vector<double> c_grid, std::uint64_t trials, std::uint64_t seed,
                                           unsigned threads = 0) {
    if (classify_pair(f, g).kind != DominationCase::case_ii)
        throw UsageError("empirical_crossover: " + f.label() + " vs " + g.label() + " is not a case-ii pair");
    if (c_grid.empty() || trials == 0) throw UsageError("empirical_crossover: empty grid or zero trials");
    std::sort(c_grid.begin(), c_grid.end());
    CrossoverResult out;
    for (double c : c_grid) {
        CrossoverPoint pt;
        pt.c = c;
        pt.p = c / std::sqrt(static_cast<double>(n));
        if (!(pt.p > 0.0 && pt.p < 1.0)) throw ParameterError("empirical_crossover: p outside (0, 1) at c = " + std::to_string(c));
        pt.trials = trials;
        std::vector<int> outcome(static_cast<std::size_t>(trials), 0);
        const auto failure = parallel_for(outcome.size(), threads, [&](std::size_t t) {
            const IntegerSet a = sample(n, pt.p, {seed, t});
            const auto fs = form_image(a, f).size();
            const auto gs = form_image(a, g).size();
            outcome[t] = fs > gs ? 1 : (fs < gs ? -1 : 0);
        });
        if (failure) std::rethrow_exception(failure->error);
        for (int o : outcome) {
            if (o > 0) ++pt.first_wins;
            else if (o < 0) ++pt.second_wins;
            else ++pt.ties;
        }
        pt.frequency = static_cast<double>(pt.first_wins) / static_cast<double>(trials);
        out.points.push_back(pt);
    }
    out.crossover = interpolate_half_crossing(out.points);
    out.inconclusive = !out.crossover.has_value();
    return out;
}

} // namespace sumdiff::harness
