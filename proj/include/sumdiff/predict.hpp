#pragma once

// Closed-form expectations and asymptotic predictions for sumsets, difference
// sets and linear-form images of binomial random sets.

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sumdiff/error.hpp"
#include "sumdiff/randmodel.hpp"
#include "sumdiff/setcore.hpp"

namespace sumdiff {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (d == 0) throw DomainError("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const auto g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const auto lhs = static_cast<__int128>(a.num) * b.den;
        const auto rhs = static_cast<__int128>(b.num) * a.den;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
};

// Below this argument the closed forms lose digits to cancellation and the
// alternating series is used instead.
inline constexpr double series_crossover = 1e-3;
inline constexpr unsigned series_terms = 12;

inline double series_partial_g(double x, unsigned m) {
    if (m == 0) throw UsageError("series_partial_g: m must be >= 1");
    double term = x / 2.0;  // x^k / (k + 1)! at k = 1
    double sum = 0.0;
    for (unsigned k = 1; k <= m; ++k) {
        sum += (k % 2 == 1) ? term : -term;
        term *= x / static_cast<double>(k + 2);
    }
    return 2.0 * sum;
}

// g(x) = 2 (e^-x - (1 - x)) / x, increasing from 0 to 2.
inline double g_ratio(double x) {
    if (!(x > 0.0)) throw DomainError("g_ratio: x must be positive");
    if (x < series_crossover) return series_partial_g(x, series_terms);
    return 2.0 * (std::expm1(-x) + x) / x;
}

namespace detail {

inline void check_form_args(std::int64_t u, std::int64_t abs_v) {
    if (abs_v < 1 || u < abs_v) throw DomainError("need u >= |v| >= 1");
}

inline double factorial(unsigned n) {
    double f = 1.0;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace detail

// Coefficient of x^j in the power series of g_{u,v}(x), j >= 1.
inline double g_form_series_coefficient(std::int64_t u, std::int64_t abs_v, unsigned j) {
    const double mag = 2.0 * static_cast<double>(abs_v) / detail::factorial(j + 1) +
                       static_cast<double>(u - abs_v) / detail::factorial(j);
    return (j % 2 == 1) ? mag : -mag;
}

// g_{u,v}(x) = (u + |v|) - 2|v| (1 - e^-x) / x - (u - |v|) e^-x, increasing from 0 to u + |v|.
inline double g_form(std::int64_t u, std::int64_t abs_v, double x) {
    detail::check_form_args(u, abs_v);
    if (!(x > 0.0)) throw DomainError("g_form: x must be positive");
    if (x < series_crossover) {
        double sum = 0.0;
        double power = 1.0;
        for (unsigned j = 1; j <= series_terms; ++j) {
            power *= x;
            sum += g_form_series_coefficient(u, abs_v, j) * power;
        }
        return sum;
    }
    const auto uu = static_cast<double>(u);
    const auto vv = static_cast<double>(abs_v);
    return (uu + vv) + 2.0 * vv * std::expm1(-x) / x - (uu - vv) * std::exp(-x);
}

// alpha(u, v) = (3u - |v|) / (6u^2); smaller alpha means a larger image just below p ~ N^-1/2.
inline Rational alpha(std::int64_t u, std::int64_t abs_v) {
    detail::check_form_args(u, abs_v);
    return Rational(3 * u - abs_v, 6 * u * u);
}

// Leading-order E[X_k] (sum), E[X'_k] (diff) or E[X'_{k,f}] (binary form, ordered pairs).
inline double expected_tuple_count(std::uint64_t n, double p, unsigned k, HistKind kind,
                                   const std::optional<LinearForm>& f = std::nullopt) {
    if (k == 0) throw UsageError("expected_tuple_count: k must be >= 1");
    const double nn = static_cast<double>(n);
    const double scale = std::pow(nn, static_cast<double>(k) + 1.0);
    switch (kind) {
    case HistKind::sum:
        return 2.0 / detail::factorial(k + 1) * std::pow(p * p / 2.0, k) * scale;
    case HistKind::diff:
        return 2.0 / detail::factorial(k + 1) * std::pow(p, 2.0 * k) * scale;
    case HistKind::form: {
        if (!f || !f->is_binary()) throw UsageError("expected_tuple_count: form kind requires a binary LinearForm");
        const auto u = static_cast<double>(f->u());
        const auto v = static_cast<double>(f->abs_v());
        const double coeff = (2.0 * v / detail::factorial(k + 1) + (u - v) / detail::factorial(k)) / std::pow(u, k);
        return coeff * std::pow(p, 2.0 * k) * scale;
    }
    }
    return 0.0;
}

enum class Regime { below, at, above };

inline const char* to_string(Regime r) {
    switch (r) {
    case Regime::below: return "below";
    case Regime::at: return "at";
    case Regime::above: return "above";
    }
    return "?";
}

// Position of p(N) relative to N^-1/threshold_exponent for power-law families.
inline Regime regime_of(const PFamily& family, double critical_delta) {
    if (family.delta > critical_delta) return Regime::below;
    if (family.delta < critical_delta) return Regime::above;
    return Regime::at;
}

struct FormPrediction {
    LinearForm form;
    double image = 0.0;    // D_f
    double missing = 0.0;  // (u + |v|) N + 1 - D_f
};

struct PredictionBundle {
    std::uint64_t n = 0;
    double p = 0.0;
    Regime regime = Regime::below;
    std::optional<double> c;
    double sums = 0.0;           // S
    double diffs = 0.0;          // D
    double missing_sums = 0.0;   // S^c
    double missing_diffs = 0.0;  // D^c
    std::vector<FormPrediction> forms;
};

// Explicit-p families carry no asymptotic class, so the caller must declare one.
inline PredictionBundle asymptotic_bundle(std::uint64_t n, const PFamily& family, const std::vector<LinearForm>& forms,
                                          std::optional<Regime> declared = std::nullopt) {
    PredictionBundle b;
    b.n = n;
    b.p = p_of(family, n);
    if (family.is_power_law()) {
        b.regime = regime_of(family, 0.5);
        if (declared && *declared != b.regime) throw UsageError("declared regime contradicts the power-law exponent");
    } else {
        if (!declared) throw UsageError("explicit p needs a declared regime (below, at or above)");
        b.regime = *declared;
    }
    const double nn = static_cast<double>(n);
    const double p = b.p;
    const double slots = 2.0 * nn + 1.0;
    const double np = nn * p;
    double c = 0.0;
    if (b.regime == Regime::at) {
        c = family.is_power_law() ? family.c : p * std::sqrt(nn);
        b.c = c;
    }
    switch (b.regime) {
    case Regime::below:
        b.sums = np * np / 2.0;
        b.diffs = np * np;
        b.missing_sums = slots - b.sums;
        b.missing_diffs = slots - b.diffs;
        break;
    case Regime::at:
        b.sums = g_ratio(c * c / 2.0) * nn;
        b.diffs = g_ratio(c * c) * nn;
        b.missing_sums = slots - b.sums;
        b.missing_diffs = slots - b.diffs;
        break;
    case Regime::above:
        b.missing_sums = 4.0 / (p * p);
        b.missing_diffs = 2.0 / (p * p);
        b.sums = slots - b.missing_sums;
        b.diffs = slots - b.missing_diffs;
        break;
    }
    for (const auto& f : forms) {
        if (!f.is_binary()) throw UsageError("asymptotic_bundle: k-ary forms go through conjecture_prediction");
        FormPrediction fp{f};
        const double form_slots = static_cast<double>(f.abs_sum()) * nn + 1.0;
        if (f.kind() == FormKind::binary_sum) {
            fp.image = b.sums;
            fp.missing = b.missing_sums;
        } else {
            const auto u = f.u();
            const auto v = f.abs_v();
            switch (b.regime) {
            case Regime::below:
                fp.image = np * np;
                fp.missing = form_slots - fp.image;
                break;
            case Regime::at:
                fp.image = g_form(u, v, c * c / static_cast<double>(u)) * nn;
                fp.missing = form_slots - fp.image;
                break;
            case Regime::above:
                fp.missing = 2.0 * static_cast<double>(u * v) / (p * p);
                fp.image = form_slots - fp.missing;
                break;
            }
        }
        b.forms.push_back(std::move(fp));
    }
    return b;
}

// Exact E[2N + 1 - |A + A|]. The representations n = a + (n - a) use disjoint element
// pairs, so each "n is missing" probability factorises.
inline double exact_missing_sums_expectation(std::uint64_t n, double p) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0, 1)");
    const double log_q = std::log1p(-p * p);
    const double miss_single = 1.0 - p;
    auto missing = [&](std::uint64_t m) {
        if (m % 2 == 0) return std::exp(static_cast<double>(m / 2) * log_q) * miss_single;
        return std::exp(static_cast<double>((m + 1) / 2) * log_q);
    };
    double total = 0.0;
    for (std::uint64_t m = 0; m <= n; ++m) total += missing(m);
    for (std::uint64_t m = 0; m < n; ++m) total += missing(m);  // mirror image 2N - m
    return total;
}

struct JansonBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Bounds on E[2N + 1 - |A - A|] = 2 sum_{d=1}^{N} P(d not in A - A) + (1 - p)^{N+1}.
// For each d: M <= P <= M exp(Delta / (1 - p^2)), M = (1 - p^2)^{N-d+1},
// Delta = (N - 2d + 1) p^3 for d <= N/2 (pairs sharing an element form 3-term APs), else 0.
// The upper term is also capped at 1.
inline JansonBounds janson_missing_diffs_bounds(std::uint64_t n, double p) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0, 1)");
    const double eps = p * p;
    const double log_q = std::log1p(-eps);
    const double p3 = p * p * p;
    double lower = 0.0;
    double upper = 0.0;
    for (std::uint64_t d = 1; d <= n; ++d) {
        const double log_m = static_cast<double>(n - d + 1) * log_q;
        const double delta = (2 * d <= n) ? static_cast<double>(n - 2 * d + 1) * p3 : 0.0;
        lower += std::exp(log_m);
        upper += std::min(1.0, std::exp(log_m + delta / (1.0 - eps)));
    }
    const double zero_missing = std::exp(static_cast<double>(n + 1) * std::log1p(-p));
    return {2.0 * lower + zero_missing, 2.0 * upper + zero_missing};
}

struct ConjecturePrediction {
    Regime regime = Regime::below;
    std::uint64_t theta = 1;
    std::optional<double> value;  // empty at the critical scale
    bool is_missing_count = false;
};

// k-ary forms, k >= 3: below N^-1/k predicts |f(A)| ~ (Np)^k / theta; above it predicts
// the missing count 2 theta prod|u_i| / p^k. At p = c N^-1/k there is no closed form.
inline ConjecturePrediction conjecture_prediction(const LinearForm& f, std::uint64_t n, const PFamily& family,
                                                  std::optional<Regime> declared = std::nullopt) {
    if (f.arity() < 3) throw UsageError("conjecture_prediction: needs a form in at least three variables");
    const double k = static_cast<double>(f.arity());
    ConjecturePrediction out;
    out.theta = f.theta();
    if (family.is_power_law()) {
        out.regime = regime_of(family, 1.0 / k);
    } else {
        if (!declared) throw UsageError("explicit p needs a declared regime");
        out.regime = *declared;
    }
    const double p = p_of(family, n);
    const double theta = static_cast<double>(out.theta);
    switch (out.regime) {
    case Regime::below:
        out.value = std::pow(static_cast<double>(n) * p, k) / theta;
        break;
    case Regime::above: {
        double prod = 1.0;
        for (auto c : f.coeffs()) prod *= static_cast<double>(std::llabs(c));
        out.value = 2.0 * theta * prod / std::pow(p, k);
        out.is_missing_count = true;
        break;
    }
    case Regime::at:
        break;
    }
    return out;
}

} // namespace sumdiff
