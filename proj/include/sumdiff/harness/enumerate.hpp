#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "sumdiff/error.hpp"
#include "sumdiff/harness/parallel.hpp"

namespace sumdiff::harness {

inline constexpr std::uint64_t max_enumeration_n = 26;

struct EnumerationCounts {
    std::uint64_t n = 0;
    std::uint64_t sum_dominated = 0;
    std::uint64_t balanced = 0;
    std::uint64_t difference_dominated = 0;
    std::vector<std::uint32_t> sum_dominated_sets;  // bitmasks in increasing order, capped at keep_limit

    std::uint64_t total() const { return sum_dominated + balanced + difference_dominated; }
};

inline std::vector<std::int64_t> mask_members(std::uint32_t mask) {
    std::vector<std::int64_t> out;
    for (unsigned i = 0; i < 32; ++i)
        if ((mask >> i) & 1U) out.push_back(i);
    return out;
}

inline std::uint32_t members_mask(const std::vector<std::int64_t>& members) {
    std::uint32_t m = 0;
    for (auto v : members) m |= std::uint32_t{1} << v;
    return m;
}

// |A + A| and |A - A| for A given as a bitmask over {0, ..., 31}.
inline std::pair<unsigned, unsigned> mask_sum_diff_sizes(std::uint32_t mask) {
    if (mask == 0) return {0, 0};
    std::uint64_t sums = 0;
    std::uint32_t nonneg_diffs = 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        const auto b = static_cast<unsigned>(std::countr_zero(rest));
        sums |= std::uint64_t{mask} << b;
        nonneg_diffs |= mask >> b;
    }
    return {static_cast<unsigned>(std::popcount(sums)), 2U * static_cast<unsigned>(std::popcount(nonneg_diffs)) - 1U};
}

// Classifies all 2^{N+1} subsets of {0, ..., N}; the empty set counts as balanced.
inline EnumerationCounts enumerate_exhaustive(std::uint64_t n, unsigned threads = 0, std::size_t keep_limit = 256) {
    if (n > max_enumeration_n) {
        throw ResourceError("enumerate: N = " + std::to_string(n) + " exceeds the limit of " +
                            std::to_string(max_enumeration_n));
    }
    const std::uint64_t total = std::uint64_t{1} << (n + 1);
    // Fixed chunking keeps the kept-set list identical for any thread count.
    const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(total, 256));
    const std::uint64_t per = total / chunks;
    std::vector<EnumerationCounts> parts(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        auto& part = parts[c];
        const std::uint64_t begin = c * per;
        const std::uint64_t end = (c + 1 == chunks) ? total : begin + per;
        for (std::uint64_t m = begin; m < end; ++m) {
            const auto [s, d] = mask_sum_diff_sizes(static_cast<std::uint32_t>(m));
            if (s > d) {
                ++part.sum_dominated;
                if (part.sum_dominated_sets.size() < keep_limit) part.sum_dominated_sets.push_back(static_cast<std::uint32_t>(m));
            } else if (s == d) {
                ++part.balanced;
            } else {
                ++part.difference_dominated;
            }
        }
    });
    EnumerationCounts out;
    out.n = n;
    for (const auto& part : parts) {
        out.sum_dominated += part.sum_dominated;
        out.balanced += part.balanced;
        out.difference_dominated += part.difference_dominated;
        for (auto m : part.sum_dominated_sets)
            if (out.sum_dominated_sets.size() < keep_limit) out.sum_dominated_sets.push_back(m);
    }
    return out;
}

} // namespace sumdiff::harness
