#pragma once

// Binomial random subsets of {0, ..., N} and the p(N) families used to drive them.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sumdiff/error.hpp"
#include "sumdiff/setcore.hpp"

namespace sumdiff {

// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
// 128-bit counter, 64-bit key; a pure function of both.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t m0 = 0xD2511F53;
    static constexpr std::uint32_t m1 = 0xCD9E8D57;
    static constexpr std::uint32_t w0 = 0x9E3779B9;
    static constexpr std::uint32_t w1 = 0xBB67AE85;
    static constexpr int rounds = 10;

    static constexpr Counter round(const Counter& c, const Key& k) noexcept {
        const std::uint64_t p0 = std::uint64_t{m0} * c[0];
        const std::uint64_t p1 = std::uint64_t{m1} * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }

    static constexpr Counter apply(Counter c, Key k) noexcept {
        for (int r = 0; r < rounds; ++r) {
            if (r > 0) {
                k[0] += w0;
                k[1] += w1;
            }
            c = round(c, k);
        }
        return c;
    }
};

inline constexpr const char* generator_name = "philox4x32-10";

struct PFamily {
    enum class Kind { explicit_p, power_law };

    Kind kind = Kind::explicit_p;
    double p = 0.5;      // explicit_p
    double c = 1.0;      // power_law: p(N) = c N^-delta
    double delta = 0.5;

    static PFamily explicit_probability(double p) {
        if (!(p > 0.0 && p < 1.0)) throw ParameterError("explicit p must lie in (0, 1), got " + std::to_string(p));
        PFamily f;
        f.kind = Kind::explicit_p;
        f.p = p;
        return f;
    }

    static PFamily power_law(double c, double delta) {
        if (!(c > 0.0)) throw ParameterError("power-law c must be positive");
        if (!(delta >= 0.0 && delta <= 1.0)) throw ParameterError("power-law delta must lie in [0, 1]");
        PFamily f;
        f.kind = Kind::power_law;
        f.c = c;
        f.delta = delta;
        return f;
    }

    bool is_power_law() const noexcept { return kind == Kind::power_law; }

    std::string describe() const {
        if (kind == Kind::explicit_p) return "p=" + std::to_string(p);
        return "p=" + std::to_string(c) + "*N^-" + std::to_string(delta);
    }
};

inline double p_of(const PFamily& family, std::uint64_t n) {
    if (n == 0) throw ParameterError("p_of: N must be >= 1");
    const double p = family.kind == PFamily::Kind::explicit_p
                         ? family.p
                         : family.c * std::pow(static_cast<double>(n), -family.delta);
    if (!(p > 0.0 && p < 1.0)) {
        throw ParameterError("p(N) = " + std::to_string(p) + " is outside (0, 1) at N = " + std::to_string(n));
    }
    return p;
}

struct SamplerSeed {
    std::uint64_t seed = 0;
    std::uint64_t trial_index = 0;
};

inline constexpr std::uint64_t max_sample_n = std::numeric_limits<std::uint32_t>::max() - 1;

// Inclusion threshold t with P(uniform 64-bit word < t) = p to within 2^-64.
inline std::uint64_t inclusion_threshold(double p) {
    const long double scaled = std::ldexp(static_cast<long double>(p), 64);
    if (scaled >= 18446744073709551615.0L) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(scaled);
}

// Element n of trial t under seed s is decided by 64 bits of Philox output at counter
// (n / 2, t_lo, t_hi, N), key s: words 0-1 for even n, words 2-3 for odd n. The result
// depends only on (N, p, key).
inline IntegerSet sample(std::uint64_t n, double p, const SamplerSeed& key) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("sample: p must lie in (0, 1)");
    if (n > max_sample_n) throw ResourceError("sample: N too large for the counter layout");
    const std::uint64_t threshold = inclusion_threshold(p);
    const Philox4x32::Key k{static_cast<std::uint32_t>(key.seed), static_cast<std::uint32_t>(key.seed >> 32)};
    const auto t_lo = static_cast<std::uint32_t>(key.trial_index);
    const auto t_hi = static_cast<std::uint32_t>(key.trial_index >> 32);
    const auto n32 = static_cast<std::uint32_t>(n);

    std::vector<std::uint64_t> words(detail::words_for(n + 1), 0);
    const std::uint64_t blocks = n / 2 + 1;
    for (std::uint64_t blk = 0; blk < blocks; ++blk) {
        const auto out = Philox4x32::apply({static_cast<std::uint32_t>(blk), t_lo, t_hi, n32}, k);
        const std::uint64_t even = (std::uint64_t{out[0]} << 32) | out[1];
        const std::uint64_t odd = (std::uint64_t{out[2]} << 32) | out[3];
        const std::uint64_t e = 2 * blk;
        if (even < threshold) words[e / 64] |= std::uint64_t{1} << (e % 64);
        if (e + 1 <= n && odd < threshold) words[(e + 1) / 64] |= std::uint64_t{1} << ((e + 1) % 64);
    }
    return IntegerSet::from_words(0, static_cast<std::int64_t>(n), std::move(words));
}

} // namespace sumdiff
