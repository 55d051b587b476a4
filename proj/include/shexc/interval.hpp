// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>

namespace shexc {

// Occurrence interval [min;max]; max may be infinite.
class Interval {
  public:
    using Bound = std::uint64_t;
    static constexpr Bound inf = std::numeric_limits<Bound>::max();

    constexpr Interval() = default;
    Interval(Bound min, Bound max);

    static constexpr Interval one() { return Interval(Raw{}, 1, 1); }
    static constexpr Interval opt() { return Interval(Raw{}, 0, 1); }
    static constexpr Interval plus() { return Interval(Raw{}, 1, inf); }
    static constexpr Interval star() { return Interval(Raw{}, 0, inf); }
    static constexpr Interval zero() { return Interval(Raw{}, 0, 0); }
    static Interval exactly(Bound k) { return Interval(k, k); }

    [[nodiscard]] constexpr Bound min() const { return min_; }
    [[nodiscard]] constexpr Bound max() const { return max_; }
    [[nodiscard]] constexpr bool unbounded() const { return max_ == inf; }
    [[nodiscard]] bool basic() const;
    [[nodiscard]] bool singleton() const { return min_ == max_ && max_ != inf; }
    [[nodiscard]] bool contains(Bound k) const { return min_ <= k && k <= max_; }

    // "1", "?", "+", "*", "[n;m]" or "[n;inf]"
    [[nodiscard]] std::string str() const;

    friend constexpr bool operator==(const Interval&, const Interval&) = default;
    friend constexpr auto operator<=>(const Interval&, const Interval&) = default;

  private:
    struct Raw {};
    constexpr Interval(Raw, Bound lo, Bound hi) : min_(lo), max_(hi) {}
    Bound min_ = 1;
    Bound max_ = 1;
};

// Checked addition on bounds; inf absorbs, finite overflow throws.
Interval::Bound add_bounds(Interval::Bound a, Interval::Bound b);
Interval::Bound mul_bounds(Interval::Bound a, Interval::Bound b);

Interval interval_add(const Interval& a, const Interval& b);
Interval interval_sum(std::span<const Interval> xs);
bool interval_subset(const Interval& a, const Interval& b);

// Parses an occurrence token of the text formats. Throws Error on bad input.
Interval parse_interval(std::string_view token);

} // namespace shexc
