// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/interval.hpp"

#include <charconv>

#include "shexc/error.hpp"

namespace shexc {

Interval::Interval(Bound min, Bound max) : min_(min), max_(max) {
    if (min == inf) throw Error("interval lower bound cannot be infinite");
    if (min > max) throw Error("interval [" + std::to_string(min) + ";" + std::to_string(max) + "] is empty");
}

bool Interval::basic() const { return (min_ == 0 || min_ == 1) && (max_ == 1 || max_ == inf); }

std::string Interval::str() const {
    if (*this == one()) return "1";
    if (*this == opt()) return "?";
    if (*this == plus()) return "+";
    if (*this == star()) return "*";
    return "[" + std::to_string(min_) + ";" + (max_ == inf ? std::string("inf") : std::to_string(max_)) + "]";
}

Interval::Bound add_bounds(Interval::Bound a, Interval::Bound b) {
    if (a == Interval::inf || b == Interval::inf) return Interval::inf;
    if (a > Interval::inf - 1 - b) throw Error("interval arithmetic overflow");
    return a + b;
}

Interval::Bound mul_bounds(Interval::Bound a, Interval::Bound b) {
    if (a == 0 || b == 0) return 0;
    if (a == Interval::inf || b == Interval::inf) return Interval::inf;
    if (a > (Interval::inf - 1) / b) throw Error("interval arithmetic overflow");
    return a * b;
}

Interval interval_add(const Interval& a, const Interval& b) {
    return Interval(add_bounds(a.min(), b.min()), add_bounds(a.max(), b.max()));
}

Interval interval_sum(std::span<const Interval> xs) {
    Interval acc = Interval::zero();
    for (const auto& x : xs) acc = interval_add(acc, x);
    return acc;
}

bool interval_subset(const Interval& a, const Interval& b) { return b.min() <= a.min() && a.max() <= b.max(); }

namespace {
Interval::Bound parse_bound(std::string_view s, std::string_view whole) {
    if (s == "inf" || s == "∞") return Interval::inf;
    Interval::Bound v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty() || v == Interval::inf)
        throw Error("bad interval '" + std::string(whole) + "'");
    return v;
}
} // namespace

Interval parse_interval(std::string_view t) {
    if (t == "1") return Interval::one();
    if (t == "?") return Interval::opt();
    if (t == "+") return Interval::plus();
    if (t == "*") return Interval::star();
    if (t.size() >= 2 && t.front() == '[' && t.back() == ']') {
        auto body = t.substr(1, t.size() - 2);
        auto semi = body.find(';');
        if (semi == std::string_view::npos) throw Error("bad interval '" + std::string(t) + "'");
        auto lo = parse_bound(body.substr(0, semi), t);
        auto hi = parse_bound(body.substr(semi + 1), t);
        if (lo == Interval::inf) throw Error("bad interval '" + std::string(t) + "'");
        return Interval(lo, hi);
    }
    auto k = parse_bound(t, t);
    if (k == Interval::inf) throw Error("bad interval '" + std::string(t) + "'");
    return Interval::exactly(k);
}

} // namespace shexc
