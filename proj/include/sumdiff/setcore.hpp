#pragma once

// Dense integer sets, sumsets, difference sets, linear-form images and
// representation-count statistics.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumdiff/count.hpp"
#include "sumdiff/error.hpp"

namespace sumdiff {

// Work cap for anything that enumerates pairs or tuples of elements.
inline constexpr double enumeration_budget = 1e10;

namespace detail {

inline std::size_t words_for(std::uint64_t bits) { return static_cast<std::size_t>((bits + 63) / 64); }

// dst bit (i + shift) |= src bit i, for source words [0, src_words).
inline void or_shift_left(std::vector<std::uint64_t>& dst, std::span<const std::uint64_t> src,
                          std::size_t src_words, std::uint64_t shift) {
    const std::size_t w = static_cast<std::size_t>(shift / 64);
    const unsigned b = static_cast<unsigned>(shift % 64);
    std::uint64_t* out = dst.data() + w;
    const std::size_t room = dst.size() - w;
    src_words = std::min(src_words, room);
    if (b == 0) {
        for (std::size_t i = 0; i < src_words; ++i) out[i] |= src[i];
        return;
    }
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < src_words; ++i) {
        out[i] |= (src[i] << b) | carry;
        carry = src[i] >> (64 - b);
    }
    if (src_words < room) out[src_words] |= carry;
}

// dst bit (i - shift) |= src bit i, for i >= shift.
inline void or_shift_right(std::vector<std::uint64_t>& dst, std::span<const std::uint64_t> src,
                           std::uint64_t shift) {
    const std::size_t w = static_cast<std::size_t>(shift / 64);
    const unsigned b = static_cast<unsigned>(shift % 64);
    const std::size_t n = src.size();
    if (w >= n) return;
    const std::size_t count = std::min(n - w, dst.size());
    if (b == 0) {
        for (std::size_t j = 0; j < count; ++j) dst[j] |= src[j + w];
        return;
    }
    for (std::size_t j = 0; j < count; ++j) {
        std::uint64_t v = src[j + w] >> b;
        if (j + w + 1 < n) v |= src[j + w + 1] << (64 - b);
        dst[j] |= v;
    }
}

inline std::int64_t gcd_of(std::span<const std::int64_t> values) {
    std::int64_t g = 0;
    for (auto v : values) g = std::gcd(g, v);
    return g;
}

} // namespace detail

// Subset of the integer interval [lo, hi], one bit per value (bit index = value - lo).
// Immutable once built.
class IntegerSet {
public:
    IntegerSet() : IntegerSet(0, 0) {}

    // Empty set over [lo, hi].
    IntegerSet(std::int64_t lo, std::int64_t hi) : lo_(lo), hi_(hi) {
        if (lo > hi) throw RangeError("IntegerSet: lo > hi");
        words_.assign(detail::words_for(width()), 0);
    }

    // Takes ownership of a bit vector over [lo, hi]; bits past hi are cleared.
    static IntegerSet from_words(std::int64_t lo, std::int64_t hi, std::vector<std::uint64_t> words) {
        IntegerSet s(lo, hi);
        words.resize(s.words_.size(), 0);
        const std::uint64_t tail = s.width() % 64;
        if (tail != 0 && !words.empty()) words.back() &= (std::uint64_t{1} << tail) - 1;
        s.words_ = std::move(words);
        s.recount();
        return s;
    }

    std::int64_t lo() const noexcept { return lo_; }
    std::int64_t hi() const noexcept { return hi_; }
    std::uint64_t width() const noexcept { return static_cast<std::uint64_t>(hi_ - lo_) + 1; }
    std::uint64_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool contains(std::int64_t value) const noexcept {
        if (value < lo_ || value > hi_) return false;
        const auto i = static_cast<std::uint64_t>(value - lo_);
        return (words_[i / 64] >> (i % 64)) & 1U;
    }

    // Calls fn(value) for each member in increasing order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const auto b = static_cast<unsigned>(std::countr_zero(bits));
                fn(lo_ + static_cast<std::int64_t>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

    std::vector<std::int64_t> members() const {
        std::vector<std::int64_t> out;
        out.reserve(static_cast<std::size_t>(count_));
        for_each([&](std::int64_t v) { out.push_back(v); });
        return out;
    }

    std::optional<std::int64_t> min() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] != 0) return lo_ + static_cast<std::int64_t>(w * 64 + std::countr_zero(words_[w]));
        return std::nullopt;
    }

    std::optional<std::int64_t> max() const {
        for (std::size_t w = words_.size(); w-- > 0;)
            if (words_[w] != 0)
                return lo_ + static_cast<std::int64_t>(w * 64 + 63 - std::countl_zero(words_[w]));
        return std::nullopt;
    }

    // Same interval and same members.
    friend bool operator==(const IntegerSet& a, const IntegerSet& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.words_ == b.words_;
    }

    // Same members regardless of the representable interval.
    bool same_members(const IntegerSet& other) const { return members() == other.members(); }

private:
    void recount() {
        count_ = 0;
        for (auto w : words_) count_ += static_cast<std::uint64_t>(std::popcount(w));
    }

    std::int64_t lo_;
    std::int64_t hi_;
    std::vector<std::uint64_t> words_;
    std::uint64_t count_ = 0;
};

inline IntegerSet make_set(std::span<const std::int64_t> elements, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw RangeError("make_set: lo > hi");
    const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
    std::vector<std::uint64_t> words(detail::words_for(width), 0);
    for (auto e : elements) {
        if (e < lo || e > hi) {
            throw RangeError("make_set: element " + std::to_string(e) + " outside [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "]");
        }
        const auto i = static_cast<std::uint64_t>(e - lo);
        words[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return IntegerSet::from_words(lo, hi, std::move(words));
}

inline IntegerSet make_set(std::initializer_list<std::int64_t> elements, std::int64_t lo, std::int64_t hi) {
    return make_set(std::span<const std::int64_t>(elements.begin(), elements.size()), lo, hi);
}

enum class FormKind { binary_difference, binary_sum, k_ary };

// f(x_1, ..., x_k) = u_1 x_1 + ... + u_k x_k. Validated on construction.
class LinearForm {
public:
    explicit LinearForm(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() < 2) throw ValidationError("LinearForm: need at least two coefficients");
        for (auto c : coeffs_)
            if (c == 0) throw ValidationError("LinearForm: coefficients must be non-zero");
        if (coeffs_.size() == 2) {
            const auto u = coeffs_[0];
            const auto v = coeffs_[1];
            if (u == 1 && v == 1) {
                kind_ = FormKind::binary_sum;
                return;
            }
            if (u < std::llabs(v)) throw ValidationError("LinearForm " + label() + ": need u >= |v|");
            if (std::gcd(u, v) != 1) throw ValidationError("LinearForm " + label() + ": need gcd(u, v) = 1");
            kind_ = FormKind::binary_difference;
            return;
        }
        if (detail::gcd_of(coeffs_) != 1) throw ValidationError("LinearForm " + label() + ": coefficients must have gcd 1");
        kind_ = FormKind::k_ary;
    }

    LinearForm(std::int64_t u, std::int64_t v) : LinearForm(std::vector<std::int64_t>{u, v}) {}

    // "u,v" or "u1,u2,...,uk"
    static LinearForm parse(std::string_view text) {
        std::vector<std::int64_t> coeffs;
        std::string item;
        std::istringstream in{std::string(text)};
        while (std::getline(in, item, ',')) {
            std::size_t used = 0;
            std::int64_t value = 0;
            try {
                value = std::stoll(item, &used);
            } catch (const std::exception&) {
                throw ValidationError("cannot parse form coefficient '" + item + "'");
            }
            if (used != item.size()) throw ValidationError("cannot parse form coefficient '" + item + "'");
            coeffs.push_back(value);
        }
        return LinearForm(std::move(coeffs));
    }

    FormKind kind() const noexcept { return kind_; }
    std::size_t arity() const noexcept { return coeffs_.size(); }
    std::span<const std::int64_t> coeffs() const noexcept { return coeffs_; }
    bool is_binary() const noexcept { return coeffs_.size() == 2; }
    std::int64_t u() const noexcept { return coeffs_[0]; }
    std::int64_t v() const noexcept { return coeffs_[1]; }
    std::int64_t abs_v() const noexcept { return std::llabs(coeffs_[1]); }

    std::int64_t abs_sum() const noexcept {
        std::int64_t s = 0;
        for (auto c : coeffs_) s += std::llabs(c);
        return s;
    }

    // Number of coordinate permutations that leave the coefficient vector unchanged.
    std::uint64_t theta() const {
        std::map<std::int64_t, unsigned> mult;
        for (auto c : coeffs_) ++mult[c];
        std::uint64_t t = 1;
        for (const auto& [c, m] : mult)
            for (unsigned i = 2; i <= m; ++i) t *= i;
        return t;
    }

    std::string label() const {
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(coeffs_[i]);
        }
        return out;
    }

    // Smallest and largest value the form takes on [lo, hi]^k.
    std::pair<std::int64_t, std::int64_t> range_over(std::int64_t lo, std::int64_t hi) const {
        std::int64_t a = 0, b = 0;
        for (auto c : coeffs_) {
            a += std::min(c * lo, c * hi);
            b += std::max(c * lo, c * hi);
        }
        return {a, b};
    }

    friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<std::int64_t> coeffs_;
    FormKind kind_ = FormKind::k_ary;
};

// {u * a : a in A} over the exact image interval.
inline IntegerSet dilate(const IntegerSet& a, std::int64_t u) {
    if (u == 0) throw ValidationError("dilate: zero factor");
    const std::int64_t lo = std::min(u * a.lo(), u * a.hi());
    const std::int64_t hi = std::max(u * a.lo(), u * a.hi());
    const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
    std::vector<std::uint64_t> words(detail::words_for(width), 0);
    a.for_each([&](std::int64_t x) {
        const auto i = static_cast<std::uint64_t>(u * x - lo);
        words[i / 64] |= std::uint64_t{1} << (i % 64);
    });
    return IntegerSet::from_words(lo, hi, std::move(words));
}

namespace detail {

// Shift-accumulate costs ~|iterated| * words(other) sequential word operations; marking
// pairs costs |X| * |Y| scattered bit writes. Scattered writes are taken as 4x dearer.
inline bool prefer_pair_marking(std::uint64_t iterated_count, std::uint64_t other_count,
                                std::uint64_t other_words) {
    return 4 * other_count < other_words || iterated_count == 0;
}

inline void set_bit(std::vector<std::uint64_t>& words, std::uint64_t i) {
    words[i / 64] |= std::uint64_t{1} << (i % 64);
}

} // namespace detail

// X + Y = {x + y}, over [X.lo + Y.lo, X.hi + Y.hi].
inline IntegerSet add_sets(const IntegerSet& x, const IntegerSet& y) {
    const std::int64_t lo = x.lo() + y.lo();
    const std::int64_t hi = x.hi() + y.hi();
    const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
    std::vector<std::uint64_t> words(detail::words_for(width), 0);
    const IntegerSet& iter = x.size() <= y.size() ? x : y;
    const IntegerSet& other = x.size() <= y.size() ? y : x;
    if (detail::prefer_pair_marking(iter.size(), other.size(), other.words().size())) {
        const auto ms = other.members();
        iter.for_each([&](std::int64_t a) {
            for (auto b : ms) detail::set_bit(words, static_cast<std::uint64_t>(a + b - lo));
        });
    } else {
        iter.for_each([&](std::int64_t a) {
            detail::or_shift_left(words, other.words(), other.words().size(),
                                  static_cast<std::uint64_t>(a - iter.lo()));
        });
    }
    return IntegerSet::from_words(lo, hi, std::move(words));
}

// A + A over [2 lo, 2 hi].
inline IntegerSet sumset(const IntegerSet& a) {
    const std::int64_t lo = 2 * a.lo();
    const std::int64_t hi = 2 * a.hi();
    const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
    std::vector<std::uint64_t> words(detail::words_for(width), 0);
    if (detail::prefer_pair_marking(a.size(), a.size(), a.words().size())) {
        const auto ms = a.members();
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = i; j < ms.size(); ++j)
                detail::set_bit(words, static_cast<std::uint64_t>(ms[i] + ms[j] - lo));
    } else {
        // Only partners at or below b are needed for member b.
        a.for_each([&](std::int64_t b) {
            const auto ib = static_cast<std::uint64_t>(b - a.lo());
            detail::or_shift_left(words, a.words(), static_cast<std::size_t>(ib / 64 + 1), ib);
        });
    }
    return IntegerSet::from_words(lo, hi, std::move(words));
}

// A - A over [lo - hi, hi - lo]; symmetric about 0.
inline IntegerSet diffset(const IntegerSet& a) {
    const auto span = static_cast<std::uint64_t>(a.hi() - a.lo());
    const std::int64_t rlo = -static_cast<std::int64_t>(span);
    const std::int64_t rhi = static_cast<std::int64_t>(span);
    // Non-negative differences first, then mirror.
    std::vector<std::uint64_t> pos(detail::words_for(span + 1), 0);
    if (detail::prefer_pair_marking(a.size(), a.size(), a.words().size())) {
        const auto ms = a.members();
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = i; j < ms.size(); ++j)
                detail::set_bit(pos, static_cast<std::uint64_t>(ms[j] - ms[i]));
    } else {
        a.for_each([&](std::int64_t b) {
            detail::or_shift_right(pos, a.words(), static_cast<std::uint64_t>(b - a.lo()));
        });
    }
    std::vector<std::uint64_t> words(detail::words_for(2 * span + 1), 0);
    for (std::size_t w = 0; w < pos.size(); ++w) {
        std::uint64_t bits = pos[w];
        while (bits != 0) {
            const std::uint64_t d = w * 64 + static_cast<unsigned>(std::countr_zero(bits));
            detail::set_bit(words, span + d);
            detail::set_bit(words, span - d);
            bits &= bits - 1;
        }
    }
    return IntegerSet::from_words(rlo, rhi, std::move(words));
}

// f(A) = {u_1 a_1 + ... + u_k a_k : a_i in A}, over the exact image interval of f on [lo, hi].
inline IntegerSet form_image(const IntegerSet& a, const LinearForm& f) {
    if (f.arity() > 2) {
        const double work = std::pow(static_cast<double>(a.size()), static_cast<double>(f.arity()));
        if (work > enumeration_budget) {
            throw ResourceError("form_image: |A|^k = " + std::to_string(work) + " exceeds the enumeration budget");
        }
    }
    if (f.kind() == FormKind::binary_sum) return sumset(a);
    if (f.is_binary() && f.u() == 1 && f.v() == -1) return diffset(a);
    IntegerSet acc = dilate(a, f.coeffs()[0]);
    for (std::size_t i = 1; i < f.arity(); ++i) acc = add_sets(acc, dilate(a, f.coeffs()[i]));
    return acc;
}

enum class HistKind { sum, diff, form };

inline const char* to_string(HistKind k) {
    switch (k) {
    case HistKind::sum: return "sum";
    case HistKind::diff: return "diff";
    case HistKind::form: return "form";
    }
    return "?";
}

// R(value) over a dense domain [domain_lo, domain_hi].
//   sum:  unordered pairs {a1, a2} with repetition.
//   diff: ordered pairs (a1, a2), diagonal included, so R(0) = |A|.
//   form: ordered pairs (a1, a2) with u a1 + v a2 = value, diagonal included.
struct RepHistogram {
    HistKind kind = HistKind::sum;
    std::optional<LinearForm> form;
    std::int64_t domain_lo = 0;
    std::int64_t domain_hi = 0;
    std::vector<std::uint32_t> counts;

    std::uint32_t at(std::int64_t value) const {
        if (value < domain_lo || value > domain_hi) return 0;
        return counts[static_cast<std::size_t>(value - domain_lo)];
    }

    Count total() const {
        Count t = 0;
        for (auto c : counts) t += c;
        return t;
    }

    // Values that count toward X_k and tau_i: everything except d = 0 for differences.
    bool counted(std::int64_t value) const { return !(kind == HistKind::diff && value == 0); }

    std::uint32_t max_count() const {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counted(domain_lo + static_cast<std::int64_t>(i))) m = std::max(m, counts[i]);
        return m;
    }
};

inline RepHistogram rep_histogram(const IntegerSet& a, HistKind kind, const std::optional<LinearForm>& f = std::nullopt) {
    RepHistogram h;
    h.kind = kind;
    const double n = static_cast<double>(a.size());
    const double work = kind == HistKind::sum ? n * (n + 1) / 2 : n * n;
    if (work > enumeration_budget) {
        throw ResourceError("rep_histogram: " + std::to_string(work) + " pair operations exceed the enumeration budget");
    }
    const auto ms = a.members();
    switch (kind) {
    case HistKind::sum: {
        h.domain_lo = 2 * a.lo();
        h.domain_hi = 2 * a.hi();
        h.counts.assign(static_cast<std::size_t>(h.domain_hi - h.domain_lo + 1), 0);
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = i; j < ms.size(); ++j) ++h.counts[static_cast<std::size_t>(ms[i] + ms[j] - h.domain_lo)];
        break;
    }
    case HistKind::diff: {
        h.domain_lo = a.lo() - a.hi();
        h.domain_hi = a.hi() - a.lo();
        h.counts.assign(static_cast<std::size_t>(h.domain_hi - h.domain_lo + 1), 0);
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = 0; j < ms.size(); ++j) ++h.counts[static_cast<std::size_t>(ms[i] - ms[j] - h.domain_lo)];
        break;
    }
    case HistKind::form: {
        if (!f) throw UsageError("rep_histogram: form kind requires a LinearForm");
        if (!f->is_binary()) throw UsageError("rep_histogram: only binary forms are supported");
        h.form = f;
        const auto [lo, hi] = f->range_over(a.lo(), a.hi());
        h.domain_lo = lo;
        h.domain_hi = hi;
        h.counts.assign(static_cast<std::size_t>(hi - lo + 1), 0);
        const auto u = f->u();
        const auto v = f->v();
        for (auto x : ms)
            for (auto y : ms) ++h.counts[static_cast<std::size_t>(u * x + v * y - lo)];
        break;
    }
    }
    return h;
}

// X_k = sum over counted values of C(R(value), k).
inline Count tuple_statistic(const RepHistogram& h, unsigned k) {
    if (k == 0) throw UsageError("tuple_statistic: k must be >= 1");
    const std::uint32_t top = h.max_count();
    if (top < k) return 0;
    std::vector<Count> table(static_cast<std::size_t>(top) + 1);
    for (std::uint32_t r = k; r <= top; ++r) table[r] = binomial(r, k);
    Count total = 0;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const auto r = h.counts[i];
        if (r >= k && h.counted(h.domain_lo + static_cast<std::int64_t>(i))) total = checked_add(total, table[r]);
    }
    return total;
}

// tau_i = number of counted values with R(value) = i, for i >= 1.
inline std::map<std::uint32_t, std::uint64_t> multiplicity_profile(const RepHistogram& h) {
    std::map<std::uint32_t, std::uint64_t> tau;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const auto r = h.counts[i];
        if (r >= 1 && h.counted(h.domain_lo + static_cast<std::int64_t>(i))) ++tau[r];
    }
    return tau;
}

enum class Domination { sum_dominated, balanced, difference_dominated };

inline const char* to_string(Domination d) {
    switch (d) {
    case Domination::sum_dominated: return "sum-dominated";
    case Domination::balanced: return "balanced";
    case Domination::difference_dominated: return "difference-dominated";
    }
    return "?";
}

struct Classification {
    Domination label;
    std::uint64_t sumset_size;
    std::uint64_t diffset_size;
    std::uint64_t missing_sums;   // (2N + 1) - |A + A|
    std::uint64_t missing_diffs;  // (2N + 1) - |A - A|
};

// N is taken from the set's interval: A over [lo, lo + N].
inline Classification classify(const IntegerSet& a) {
    const std::uint64_t s = sumset(a).size();
    const std::uint64_t d = diffset(a).size();
    const std::uint64_t slots = 2 * (a.width() - 1) + 1;
    Domination label = Domination::balanced;
    if (s > d) label = Domination::sum_dominated;
    if (s < d) label = Domination::difference_dominated;
    return {label, s, d, slots - s, slots - d};
}

} // namespace sumdiff
