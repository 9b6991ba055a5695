#pragma once

// Which of two binary difference forms has the larger image, and where that flips.

#include <cmath>
#include <optional>
#include <string>

#include "sumdiff/error.hpp"
#include "sumdiff/predict.hpp"
#include "sumdiff/randmodel.hpp"
#include "sumdiff/setcore.hpp"

namespace sumdiff {

enum class DominationCase { case_i, case_ii, incomparable };

inline const char* to_string(DominationCase c) {
    switch (c) {
    case DominationCase::case_i: return "case-i";
    case DominationCase::case_ii: return "case-ii";
    case DominationCase::incomparable: return "incomparable";
    }
    return "?";
}

// Refers to the arguments of the call: first = F, second = G.
enum class Side { first, second, same };

inline const char* to_string(Side s) {
    switch (s) {
    case Side::first: return "F";
    case Side::second: return "G";
    case Side::same: return "same";
    }
    return "?";
}

struct DominationReport {
    DominationCase kind = DominationCase::incomparable;
    Side dominator_below = Side::same;  // for N^-3/5 = o(p), p = o(N^-1/2) and small c
    Side dominator_above = Side::same;  // for large c and N^-1/2 = o(p)
    std::optional<double> c_threshold;
    std::string validity_note;
};

inline constexpr double tie_tolerance = 1e-14;

namespace detail {

inline void require_difference_form(const LinearForm& f, const char* who) {
    if (f.kind() != FormKind::binary_difference)
        throw ValidationError(std::string(who) + ": " + f.label() + " is not a binary difference form");
}

inline double g_at_c(const LinearForm& f, double c) {
    return g_form(f.u(), f.abs_v(), c * c / static_cast<double>(f.u()));
}

} // namespace detail

// h(c) = g_{u1,v1}(c^2/u1) - g_{u2,v2}(c^2/u2). The leading c^2 terms cancel exactly, so
// for small c the series are differenced coefficient by coefficient. The closed forms lose
// about (u + |v|) ulp absolute, which is too much against h ~ c^4 below x = 1/2.
inline constexpr double gap_series_limit = 0.5;
inline constexpr unsigned gap_series_terms = 24;

inline double form_gap(const LinearForm& f, const LinearForm& g, double c) {
    if (!(c > 0.0)) throw DomainError("form_gap: c must be positive");
    const double x = c * c / static_cast<double>(std::min(f.u(), g.u()));
    if (x >= gap_series_limit) return detail::g_at_c(f, c) - detail::g_at_c(g, c);
    const double c2 = c * c;
    double sum = 0.0;
    double power = c2;
    double uf = static_cast<double>(f.u()), ug = static_cast<double>(g.u());
    for (unsigned j = 2; j <= gap_series_terms; ++j) {  // j = 1 coefficients are both 1
        power *= c2;
        uf *= static_cast<double>(f.u());
        ug *= static_cast<double>(g.u());
        const double a = g_form_series_coefficient(f.u(), f.abs_v(), j) / uf;
        const double b = g_form_series_coefficient(g.u(), g.abs_v(), j) / ug;
        sum += (a - b) * power;
    }
    return sum;
}

inline double solve_threshold(const LinearForm& f, const LinearForm& g);

inline DominationReport classify_pair(const LinearForm& f, const LinearForm& g) {
    detail::require_difference_form(f, "classify_pair");
    detail::require_difference_form(g, "classify_pair");
    DominationReport r;
    r.validity_note = "valid for N^-3/5 = o(p) and p = o(1)";
    if (f.u() == g.u() && f.abs_v() == g.abs_v()) {
        r.kind = DominationCase::incomparable;
        r.validity_note = "forms ux+vy and ux-vy have identical asymptotics; no comparison is possible";
        return r;
    }
    const auto s1 = f.u() + f.abs_v();
    const auto s2 = g.u() + g.abs_v();
    const auto a1 = alpha(f.u(), f.abs_v());
    const auto a2 = alpha(g.u(), g.abs_v());
    if (s1 >= s2 && a1 < a2) {
        r.kind = DominationCase::case_i;
        r.dominator_below = r.dominator_above = Side::first;
    } else if (s2 >= s1 && a2 < a1) {
        r.kind = DominationCase::case_i;
        r.dominator_below = r.dominator_above = Side::second;
    } else if (s1 > s2 && a1 > a2) {
        r.kind = DominationCase::case_ii;
        r.dominator_below = Side::second;
        r.dominator_above = Side::first;
    } else {
        // s2 > s1 and a2 > a1; alpha is injective on (u, |v|) so nothing else remains.
        r.kind = DominationCase::case_ii;
        r.dominator_below = Side::first;
        r.dominator_above = Side::second;
    }
    if (r.kind == DominationCase::case_ii) r.c_threshold = solve_threshold(f, g);
    return r;
}

// Unique positive root of h, by bisection. The form with the larger u + |v| wins above it.
inline double solve_threshold(const LinearForm& f, const LinearForm& g) {
    detail::require_difference_form(f, "solve_threshold");
    detail::require_difference_form(g, "solve_threshold");
    const auto s1 = f.u() + f.abs_v();
    const auto s2 = g.u() + g.abs_v();
    const auto a1 = alpha(f.u(), f.abs_v());
    const auto a2 = alpha(g.u(), g.abs_v());
    const bool case_ii = (s1 > s2 && a1 > a2) || (s2 > s1 && a2 > a1);
    if (!case_ii) throw UsageError("solve_threshold: " + f.label() + " vs " + g.label() + " is not a case-ii pair");
    const LinearForm& big = s1 > s2 ? f : g;
    const LinearForm& small = s1 > s2 ? g : f;
    auto h = [&](double c) { return form_gap(big, small, c); };

    double lo = 1e-6;
    double hi = 1.0;
    if (!(h(lo) < 0.0)) throw NumericalError("solve_threshold: h is not negative at the lower bracket");
    while (h(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e3) throw NumericalError("solve_threshold: no sign change below c = 1000");
    }
    for (int it = 0; it < 400 && (hi - lo) > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline Side dominator_at(const LinearForm& f, const LinearForm& g, double c) {
    detail::require_difference_form(f, "dominator_at");
    detail::require_difference_form(g, "dominator_at");
    const double h = form_gap(f, g, c);
    if (std::abs(h) < tie_tolerance * static_cast<double>(f.u() + f.abs_v())) return Side::same;
    return h > 0.0 ? Side::first : Side::second;
}

struct RegimeVerdict {
    std::optional<Side> dominator;  // empty on model breakdown
    bool model_breakdown = false;
    std::string rationale;
};

inline RegimeVerdict regime_dominator(const LinearForm& f, const LinearForm& g, const PFamily& family) {
    detail::require_difference_form(f, "regime_dominator");
    detail::require_difference_form(g, "regime_dominator");
    if (!family.is_power_law()) throw UsageError("regime_dominator: needs a power-law family");
    RegimeVerdict out;
    const double delta = family.delta;
    const bool same_shape = f.u() == g.u() && f.abs_v() == g.abs_v();
    if (delta >= 0.6) {
        out.model_breakdown = true;
        out.rationale = "p = O(N^-3/5): fluctuations of |A| swamp the difference; the model says nothing";
        return out;
    }
    if (same_shape) {
        out.dominator = Side::same;
        out.rationale = "identical (u, |v|): estimates coincide";
        return out;
    }
    if (delta < 0.5) {
        const auto s1 = f.u() + f.abs_v();
        const auto s2 = g.u() + g.abs_v();
        if (s1 != s2) {
            out.dominator = s1 > s2 ? Side::first : Side::second;
            out.rationale = "N^-1/2 = o(p): larger u+|v| wins (" + std::to_string(s1) + " vs " + std::to_string(s2) + ")";
        } else {
            out.dominator = f.u() > g.u() ? Side::first : Side::second;
            out.rationale = "N^-1/2 = o(p), equal u+|v|: larger u (smaller u|v|) wins";
        }
        return out;
    }
    if (delta > 0.5) {
        const auto a1 = alpha(f.u(), f.abs_v());
        const auto a2 = alpha(g.u(), g.abs_v());
        out.dominator = a1 < a2 ? Side::first : Side::second;
        out.rationale = "N^-3/5 = o(p) = o(N^-1/2): smaller alpha wins (" + a1.to_string() + " vs " + a2.to_string() + ")";
        return out;
    }
    out.dominator = dominator_at(f, g, family.c);
    out.rationale = "p = c N^-1/2: sign of g_f(c^2/u_f) - g_g(c^2/u_g) at c = " + std::to_string(family.c);
    return out;
}

} // namespace sumdiff
