// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "shexc/graph.hpp"

namespace shexc {

struct CanonicalForm {
    std::string code;            // equal iff the graphs are isomorphic
    std::vector<NodeId> order;   // order[i] = node placed at canonical position i
};

// Colour refinement seeded with out/in label-interval multisets, then
// individualisation with backtracking on non-singleton cells.
CanonicalForm canonical_form(const Graph& g);
// g renumbered by its canonical order, nodes named n0, n1, ...
Graph canonical_graph(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

} // namespace shexc
