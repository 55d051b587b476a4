// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shexc/bitset.hpp"
#include "shexc/graph.hpp"
#include "shexc/rbe.hpp"
#include "shexc/schema.hpp"

namespace shexc {

// Node -> set of schema types.
class Typing {
  public:
    Typing() = default;
    Typing(std::size_t nodes, std::size_t types, bool full = false) : sets_(nodes, TypeSet(types, full)) {}

    [[nodiscard]] std::size_t node_count() const { return sets_.size(); }
    [[nodiscard]] bool contains(NodeId n, TypeId t) const { return sets_.at(n).test(t); }
    void add(NodeId n, TypeId t) { sets_.at(n).set(t); }
    void remove(NodeId n, TypeId t) { sets_.at(n).reset(t); }
    [[nodiscard]] const TypeSet& types(NodeId n) const { return sets_.at(n); }
    TypeSet& types(NodeId n) { return sets_.at(n); }
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] bool total() const;

    friend bool operator==(const Typing&, const Typing&) = default;

  private:
    std::vector<TypeSet> sets_;
};

struct ValidationOptions {
    enum class Method { automatic, flow, exhaustive };
    Method method = Method::automatic;
    std::uint64_t choice_cap = 1ULL << 16;  // per node, non-RBE₀ path
    std::size_t expand_width = 64;          // above this, the ψ path is used
    unsigned jobs = 1;
};

struct Signature {
    Rbe expr;
    std::vector<std::string> symbols;  // "label::Type" per Rbe symbol
    [[nodiscard]] std::string str() const { return expr.str(symbols); }
};

Signature signature(const Graph& g, const Schema& s, const Typing& t, NodeId n);
bool satisfies_type(const Graph& g, const Schema& s, const Typing& t, NodeId n, TypeId ty,
                    const ValidationOptions& opts = {});
Typing max_typing(const Graph& g, const Schema& s, const ValidationOptions& opts = {});
bool validates(const Graph& g, const Schema& s, const ValidationOptions& opts = {});

// "node<TAB>t1,t2" per node in input order.
std::string typing_dump(const Graph& g, const Schema& s, const Typing& t);

} // namespace shexc
