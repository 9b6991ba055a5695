#pragma once

// Explicit Chebyshev bounds for p(N) = c N^-delta, 1/2 < delta < 1: the set-size
// interval, the coincident-difference count Y, and the resulting failure
// probabilities for "|A - A| / |A + A| = 2 + O(N^-g)".

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "sumdiff/error.hpp"

namespace sumdiff {

struct BoundReport {
    double c = 0.0;
    double delta = 0.0;
    std::uint64_t n = 0;
    double big_c = 0.0;    // max(1, c)
    double f_delta = 0.0;  // min(1/2, (3 delta - 1)/2)
    double g_exp = 0.0;    // chosen deviation exponent, 0 < g_exp < f_delta
    double r_delta = 0.0;  // max(3 - 4 delta, 5 - 7 delta) / 2
    double p1 = 0.0;       // P(|A| outside card_interval) bound
    double p2 = 0.0;       // P(Y > y_threshold) bound
    double card_lo = 0.0;
    double card_hi = 0.0;
    double ey_bound = 0.0;
    double sigma_y_bound = 0.0;
    double y_threshold = 0.0;
};

inline double f_of_delta(double delta) { return std::min(0.5, (3.0 * delta - 1.0) / 2.0); }
inline double r_of_delta(double delta) { return std::max(3.0 - 4.0 * delta, 5.0 - 7.0 * delta) / 2.0; }

namespace detail {

inline void check_bound_params(double c, double delta, std::uint64_t n) {
    if (!(c > 0.0)) throw ParameterError("bounds: c must be positive");
    if (!(delta > 0.5 && delta < 1.0)) throw ParameterError("bounds: delta must lie in (1/2, 1)");
    if (n == 0) throw ParameterError("bounds: N must be >= 1");
}

} // namespace detail

inline BoundReport bound_report(double c, double delta, double g_exp, std::uint64_t n) {
    detail::check_bound_params(c, delta, n);
    const double f = f_of_delta(delta);
    if (!(g_exp > 0.0 && g_exp < f)) {
        throw ParameterError("bounds: g_exp = " + std::to_string(g_exp) + " must lie in (0, f(delta) = " +
                             std::to_string(f) + ")");
    }
    const double nn = static_cast<double>(n);
    BoundReport r;
    r.c = c;
    r.delta = delta;
    r.n = n;
    r.big_c = std::max(1.0, c);
    r.f_delta = f;
    r.g_exp = g_exp;
    r.r_delta = r_of_delta(delta);
    r.p1 = (4.0 / c) * std::pow(nn, -(1.0 - delta));
    r.p2 = std::pow(nn, -(f - g_exp));
    const double mean_size = c * std::pow(nn, 1.0 - delta);
    r.card_lo = 0.5 * mean_size;
    r.card_hi = 1.5 * mean_size;
    const double c4 = std::pow(r.big_c, 4);
    r.ey_bound = 2.0 * c4 * std::pow(nn, 3.0 - 4.0 * delta);
    r.sigma_y_bound = 7.0 * c4 * std::pow(nn, r.r_delta);
    r.y_threshold = 9.0 * c4 * std::pow(nn, 2.0 - 2.0 * delta - g_exp);
    return r;
}

struct RatioClaim {
    double ratio_center = 2.0;
    double deviation_order = 0.0;  // N^-g_exp
    double failure_prob_bound = 0.0;
};

inline RatioClaim ratio_claim(const BoundReport& r) {
    return {2.0, std::pow(static_cast<double>(r.n), -r.g_exp), r.p1 + r.p2};
}

struct AltBound {
    std::optional<BoundReport> report;  // empty when the bound is trivial
    bool trivial = false;
    bool sidon_regime = false;  // delta > 3/4: A is almost surely a Sidon set
    std::string note;
};

// Chebyshev with k = N^{3 - 4 delta - r(delta)}: Y <= 9 C^4 N^{3 - 4 delta} with failure
// probability N^-(6 - 8 delta - 2 r(delta)), non-trivial only for delta < 3/4. The ratio
// deviation exponent becomes 2 delta - 1.
inline AltBound alt_parameterization(double c, double delta, std::uint64_t n) {
    detail::check_bound_params(c, delta, n);
    AltBound out;
    const double exponent = 6.0 - 8.0 * delta - 2.0 * r_of_delta(delta);
    if (delta >= 0.75 || !(exponent > 0.0)) {
        out.trivial = true;
        out.note = "failure bound is trivial for delta >= 3/4";
        if (delta > 0.75) {
            out.sidon_regime = true;
            out.note += "; for delta > 3/4 no sums or differences repeat almost surely (A is a Sidon set)";
        }
        return out;
    }
    const double nn = static_cast<double>(n);
    BoundReport r;
    r.c = c;
    r.delta = delta;
    r.n = n;
    r.big_c = std::max(1.0, c);
    r.f_delta = f_of_delta(delta);
    r.g_exp = 2.0 * delta - 1.0;
    r.r_delta = r_of_delta(delta);
    r.p1 = (4.0 / c) * std::pow(nn, -(1.0 - delta));
    r.p2 = std::pow(nn, -exponent);
    const double mean_size = c * std::pow(nn, 1.0 - delta);
    r.card_lo = 0.5 * mean_size;
    r.card_hi = 1.5 * mean_size;
    const double c4 = std::pow(r.big_c, 4);
    r.ey_bound = 2.0 * c4 * std::pow(nn, 3.0 - 4.0 * delta);
    r.sigma_y_bound = 7.0 * c4 * std::pow(nn, r.r_delta);
    r.y_threshold = 9.0 * c4 * std::pow(nn, 3.0 - 4.0 * delta);
    out.report = r;
    out.note = "P2 = N^-" + std::to_string(exponent);
    return out;
}

} // namespace sumdiff
