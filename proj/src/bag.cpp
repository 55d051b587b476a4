// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/bag.hpp"

#include <algorithm>

namespace shexc {

Bag::Bag(std::size_t dimension, std::initializer_list<Symbol> elems) : counts_(dimension, 0) {
    for (auto a : elems) add(a);
}

std::uint64_t Bag::size() const {
    std::uint64_t s = 0;
    for (auto c : counts_) s += c;
    return s;
}

void Bag::add(Symbol a, std::uint64_t k) {
    if (a >= counts_.size()) counts_.resize(a + 1, 0);
    counts_[a] += k;
}

void Bag::set(Symbol a, std::uint64_t k) {
    if (a >= counts_.size()) counts_.resize(a + 1, 0);
    counts_[a] = k;
}

bool operator==(const Bag& a, const Bag& b) {
    auto n = std::max(a.counts_.size(), b.counts_.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.count(static_cast<Symbol>(i)) != b.count(static_cast<Symbol>(i))) return false;
    return true;
}

std::string Bag::str(const std::vector<std::string>& names) const {
    std::string r = "{|";
    bool first = true;
    for (std::size_t a = 0; a < counts_.size(); ++a)
        for (std::uint64_t i = 0; i < counts_[a]; ++i) {
            if (!first) r += ",";
            first = false;
            r += a < names.size() ? names[a] : "#" + std::to_string(a);
        }
    return r + "|}";
}

Bag bag_union(const Bag& a, const Bag& b) {
    Bag r(std::max(a.dimension(), b.dimension()));
    for (std::size_t i = 0; i < r.dimension(); ++i) {
        auto s = static_cast<Symbol>(i);
        r.set(s, a.count(s) + b.count(s));
    }
    return r;
}

} // namespace shexc
