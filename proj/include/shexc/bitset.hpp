// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace shexc {

// Small dynamic bitset used for per-node type sets.
class TypeSet {
  public:
    TypeSet() = default;
    explicit TypeSet(std::size_t n, bool full = false) : n_(n), words_((n + 63) / 64, full ? ~0ULL : 0ULL) {
        trim();
    }

    [[nodiscard]] std::size_t universe() const { return n_; }
    [[nodiscard]] bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
    void set(std::size_t i) { words_[i >> 6] |= 1ULL << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }

    [[nodiscard]] bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    [[nodiscard]] bool any() const { return !none(); }
    [[nodiscard]] std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    [[nodiscard]] bool intersects(const TypeSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    TypeSet& operator&=(const TypeSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits) {
                f(w * 64 + std::countr_zero(bits));
                bits &= bits - 1;
            }
        }
    }
    [[nodiscard]] std::vector<std::size_t> elements() const {
        std::vector<std::size_t> r;
        for_each([&](std::size_t i) { r.push_back(i); });
        return r;
    }
    [[nodiscard]] const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const TypeSet&, const TypeSet&) = default;
    friend bool operator<(const TypeSet& a, const TypeSet& b) { return a.words_ < b.words_; }

  private:
    void trim() {
        if (n_ % 64 && !words_.empty()) words_.back() &= (1ULL << (n_ % 64)) - 1;
    }
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace shexc
