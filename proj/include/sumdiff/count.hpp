#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "sumdiff/error.hpp"

namespace sumdiff {

// Exact non-negative counts. X_k totals overflow 64 bits quickly once
// representation counts reach the thousands, so everything is 128-bit and
// overflow past that throws instead of saturating.
using Count = unsigned __int128;

inline constexpr Count count_max = ~Count{0};

inline Count checked_add(Count a, Count b) {
    if (a > count_max - b) throw OverflowError("128-bit count overflow in addition");
    return a + b;
}

inline Count checked_mul(Count a, Count b) {
    if (a != 0 && b > count_max / a) throw OverflowError("128-bit count overflow in multiplication");
    return a * b;
}

inline std::string to_string(Count value) {
    if (value == 0) return "0";
    std::string out;
    while (value != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

inline bool fits_u64(Count value) { return value <= std::numeric_limits<std::uint64_t>::max(); }

inline double to_double(Count value) {
    const auto hi = static_cast<std::uint64_t>(value >> 64);
    const auto lo = static_cast<std::uint64_t>(value);
    return static_cast<double>(hi) * 18446744073709551616.0 + static_cast<double>(lo);
}

// C(r, k), exact. Each partial product C(r, i) * (r - i) is divisible by i + 1.
inline Count binomial(std::uint64_t r, unsigned k) {
    if (k > r) return 0;
    if (k > r - k) k = static_cast<unsigned>(r - k);
    Count result = 1;
    for (unsigned i = 0; i < k; ++i) {
        result = checked_mul(result, static_cast<Count>(r - i)) / (i + 1);
    }
    return result;
}

} // namespace sumdiff
