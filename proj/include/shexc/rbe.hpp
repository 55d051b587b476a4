// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shexc/bag.hpp"
#include "shexc/interval.hpp"

namespace shexc {

// Regular bag expression. Immutable, cheap to copy (shared AST).
// `empty` denotes the empty language; it only arises as the empty
// disjunction in node signatures.
class Rbe {
  public:
    enum class Kind { empty, epsilon, symbol, disj, concat, repeat, intersect };

    Rbe();  // epsilon
    static Rbe epsilon();
    static Rbe empty();
    static Rbe symbol(Symbol a);
    static Rbe disj(Rbe a, Rbe b);
    static Rbe concat(Rbe a, Rbe b);
    static Rbe repeat(Rbe e, Interval i);
    static Rbe intersect(Rbe a, Rbe b);

    // Folds; concat of nothing is epsilon, disjunction of nothing is empty.
    static Rbe concat_all(const std::vector<Rbe>& xs);
    static Rbe disj_all(const std::vector<Rbe>& xs);

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] Symbol sym() const;
    [[nodiscard]] const Rbe& left() const;   // disj/concat/intersect, and the body of repeat
    [[nodiscard]] const Rbe& right() const;  // disj/concat/intersect
    [[nodiscard]] const Interval& interval() const;

    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] bool nullable() const;
    [[nodiscard]] bool has_intersect() const;
    // One past the largest symbol mentioned; 0 when there is none.
    [[nodiscard]] std::size_t alphabet_bound() const;
    [[nodiscard]] std::vector<Symbol> symbols() const;
    [[nodiscard]] const void* identity() const { return node_.get(); }

    using NameFn = std::function<std::string(Symbol)>;
    [[nodiscard]] std::string str(const NameFn& name) const;
    [[nodiscard]] std::string str(const std::vector<std::string>& names) const;

  private:
    struct Node;
    explicit Rbe(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static std::shared_ptr<const Node> binary(Kind k, const Rbe& x, const Rbe& y, bool nullable);
    std::shared_ptr<const Node> node_;
};

struct MatchLimits {
    std::uint64_t work_cap = 20'000'000;
};

// w ∈ L(e), by exhaustive decomposition with memoisation. The alphabet of e
// must fit in w.dimension(). Throws BudgetExceeded past the work cap.
bool bag_matches(const Rbe& e, const Bag& w, const MatchLimits& limits = {});

struct Rbe0Atom {
    Symbol symbol;
    Interval occur;
    friend bool operator==(const Rbe0Atom&, const Rbe0Atom&) = default;
};
using Rbe0 = std::vector<Rbe0Atom>;

std::optional<Rbe0> to_rbe0(const Rbe& e);
Rbe from_rbe0(const Rbe0& e);
bool rbe0_matches(const Rbe0& e, const Bag& w);

// Over-approximation of how often each symbol can occur in a bag of L(e).
struct SymbolRange {
    Interval::Bound lo = 0;
    Interval::Bound hi = 0;
};
std::vector<SymbolRange> symbol_ranges(const Rbe& e, std::size_t dimension);
// Same, after mapping every symbol s to the class project[s] < classes.
std::vector<SymbolRange> symbol_ranges(const Rbe& e, const std::vector<Symbol>& project, std::size_t classes);

// Standalone expression syntax with bare symbols ("a, b* | c^[2;3]").
// New symbols are appended to `alphabet`.
Rbe parse_rbe(std::string_view text, std::vector<std::string>& alphabet);

} // namespace shexc
