// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "shexc/graph.hpp"
#include "shexc/routing.hpp"

namespace shexc {

class SimulationRelation {
  public:
    SimulationRelation() = default;
    SimulationRelation(std::size_t g_nodes, std::size_t h_nodes, bool full)
        : g_(g_nodes), h_(h_nodes), member_(g_nodes * h_nodes, full ? 1 : 0) {}

    [[nodiscard]] std::size_t g_nodes() const { return g_; }
    [[nodiscard]] std::size_t h_nodes() const { return h_; }
    [[nodiscard]] bool contains(NodeId n, NodeId m) const { return member_.at(n * h_ + m) != 0; }
    void set(NodeId n, NodeId m, bool v) { member_.at(n * h_ + m) = v ? 1 : 0; }
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::vector<std::pair<NodeId, NodeId>> pairs() const;
    [[nodiscard]] bool total() const;  // dom = all nodes of g

    // λ for a pair: position i of out_G(n) maps to an edge id of h.
    std::map<std::pair<NodeId, NodeId>, std::vector<EdgeId>> witnesses;

  private:
    std::size_t g_ = 0, h_ = 0;
    std::vector<char> member_;
};

struct SimulationOptions {
    RoutingLimits limits;
    unsigned jobs = 1;
};

struct SimulationStats {
    std::size_t rounds = 0;
    std::vector<std::size_t> sizes;  // |R_i| per round, starting with |R_0|
};

// Routing problem for the pair (n, m) against the relation r.
RoutingInstance routing_instance(const Graph& g, const Graph& h, const SimulationRelation& r, NodeId n, NodeId m);

SimulationRelation max_simulation(const Graph& g, const Graph& h, const SimulationOptions& opts = {},
                                  SimulationStats* stats = nullptr);

struct EmbeddingResult {
    bool embeds = false;
    SimulationRelation relation;
};
EmbeddingResult embeds(const Graph& g, const Graph& h, const SimulationOptions& opts = {});

// Checks a witness against r (totality, admissibility, interval sums), without using the routing code.
bool verify_witness(const Graph& g, const Graph& h, const SimulationRelation& r, NodeId n, NodeId m,
                    const std::vector<EdgeId>& lambda);
bool verify_simulation(const Graph& g, const Graph& h, const SimulationRelation& r);

std::string embedding_dump(const Graph& g, const Graph& h, const SimulationRelation& r);

} // namespace shexc
