// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shexc/bitset.hpp"
#include "shexc/graph.hpp"
#include "shexc/schema.hpp"
#include "shexc/validation.hpp"

namespace shexc {

bool contains_detshex0minus(const Schema& h, const Schema& k);

Graph characterizing_graph(const Schema& h);

struct Kind {
    TypeSet h_types;
    TypeSet k_types;
    friend bool operator==(const Kind&, const Kind&) = default;
    friend bool operator<(const Kind& a, const Kind& b) {
        return a.h_types < b.h_types || (a.h_types == b.h_types && a.k_types < b.k_types);
    }
};

std::vector<Kind> kinds(const Graph& g, const Schema& h, const Schema& k, const ValidationOptions& opts = {});
Graph fuse_to_compressed(const Graph& g, const Schema& h, const Schema& k, const ValidationOptions& opts = {});

struct SearchBudget {
    std::size_t max_nodes = 6;
    std::uint64_t max_card = 3;
    double timeout_seconds = 60.0;
    // Caller asserts that max_nodes/max_card cover a known bound on minimal
    // counter-examples; only then may exhaustion be reported as Contained.
    bool assume_complete = false;
    unsigned jobs = 1;
};

struct SearchStats {
    std::uint64_t candidates = 0;        // complete graphs checked against K
    std::uint64_t expansions = 0;        // node out-configurations tried
    std::size_t levels_completed = 0;    // largest node count fully explored
    bool timed_out = false;
    bool minimal = false;                // witness is minimal per the enumeration order
    double seconds = 0;
};

struct ContainmentVerdict {
    enum class Kind { contained, not_contained, unknown };
    Kind verdict = Kind::unknown;
    std::optional<Graph> witness;  // compressed graph in canonical numbering
    SearchStats stats;
};

std::string_view to_string(ContainmentVerdict::Kind k);

// Throws PreconditionError on a malformed budget (max_nodes or max_card 0).
ContainmentVerdict find_counterexample(const Schema& h, const Schema& k, const SearchBudget& budget = {});

} // namespace shexc
