// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace shexc {

using Symbol = std::uint32_t;

// Multiset over a dense alphabet {0..dimension-1}.
class Bag {
  public:
    Bag() = default;
    explicit Bag(std::size_t dimension) : counts_(dimension, 0) {}
    Bag(std::size_t dimension, std::initializer_list<Symbol> elems);

    [[nodiscard]] std::size_t dimension() const { return counts_.size(); }
    [[nodiscard]] std::uint64_t count(Symbol a) const { return a < counts_.size() ? counts_[a] : 0; }
    [[nodiscard]] std::uint64_t size() const;
    [[nodiscard]] bool empty() const { return size() == 0; }
    [[nodiscard]] const std::vector<std::uint64_t>& counts() const { return counts_; }

    void add(Symbol a, std::uint64_t k = 1);
    void set(Symbol a, std::uint64_t k);

    // Equality ignores dimension padding with zeros.
    friend bool operator==(const Bag& a, const Bag& b);
    friend bool operator<(const Bag& a, const Bag& b) { return a.counts_ < b.counts_; }

    [[nodiscard]] std::string str(const std::vector<std::string>& names = {}) const;

  private:
    std::vector<std::uint64_t> counts_;
};

Bag bag_union(const Bag& a, const Bag& b);

} // namespace shexc
