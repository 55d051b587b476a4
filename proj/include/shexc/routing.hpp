// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shexc/interval.hpp"

namespace shexc {

// Sources are out-edges of the simulated node, sinks out-edges of the
// simulating node. A routing maps every source to one allowed sink so that
// each sink's inflow interval lies inside its own interval.
struct RoutingInstance {
    std::vector<Interval> sources;
    std::vector<Interval> sinks;
    std::vector<std::vector<bool>> allowed;  // [source][sink]

    RoutingInstance() = default;
    RoutingInstance(std::vector<Interval> src, std::vector<Interval> snk)
        : sources(std::move(src)), sinks(std::move(snk)),
          allowed(sources.size(), std::vector<bool>(sinks.size(), false)) {}
    void allow(std::size_t v, std::size_t u) { allowed.at(v).at(u) = true; }
    [[nodiscard]] bool basic() const;
};

using Routing = std::vector<std::size_t>;  // source -> sink

struct RoutingLimits {
    std::uint64_t node_budget = 5'000'000;
};

// Push-forth / pull-back augmenting paths; intervals must be basic.
std::optional<Routing> witness_exists_basic(const RoutingInstance& inst);
// Backtracking over assignments; exact for arbitrary intervals.
std::optional<Routing> witness_exists_general(const RoutingInstance& inst, const RoutingLimits& limits = {});
// Picks the basic algorithm when every interval is basic.
std::optional<Routing> find_routing(const RoutingInstance& inst, const RoutingLimits& limits = {});

// Independent check of totality, admissibility and the per-sink interval sums.
bool routing_valid(const RoutingInstance& inst, const Routing& r);

} // namespace shexc
