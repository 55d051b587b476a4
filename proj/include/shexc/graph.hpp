// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "shexc/interval.hpp"

namespace shexc {

using NodeId = std::size_t;
using EdgeId = std::size_t;

enum class GraphKind { simple, shape, compressed, general };

std::string_view to_string(GraphKind k);
std::optional<GraphKind> graph_kind_from_string(std::string_view s);

struct Edge {
    NodeId source;
    std::string label;
    NodeId target;
    Interval occur;
};

// Labelled multigraph with occurrence intervals on edges. Nodes keep their
// insertion order, which is the "input order" used by every dump format.
class Graph {
  public:
    Graph() = default;

    NodeId add_node(std::string name);
    // Returns the existing node when the name is already present.
    NodeId node(const std::string& name);
    EdgeId add_edge(NodeId source, std::string label, NodeId target, Interval occur = Interval::one());

    [[nodiscard]] std::size_t node_count() const { return names_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
    [[nodiscard]] const std::string& name(NodeId n) const { return names_.at(n); }
    [[nodiscard]] std::optional<NodeId> find(std::string_view name) const;
    [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(e); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const std::vector<EdgeId>& out(NodeId n) const { return out_.at(n); }
    [[nodiscard]] std::vector<EdgeId> in(NodeId n) const;

    [[nodiscard]] bool is_simple() const;
    [[nodiscard]] bool is_shape() const;
    [[nodiscard]] bool is_compressed() const;
    // Most restrictive kind that holds (simple before compressed before shape).
    [[nodiscard]] GraphKind kind() const;
    [[nodiscard]] bool satisfies(GraphKind k) const;

    // Total edge cardinality for compressed graphs (sum of the singleton values).
    [[nodiscard]] std::uint64_t total_cardinality() const;

    // Deterministic: no node has two out-edges with the same label.
    [[nodiscard]] bool is_deterministic() const;

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> out_;
};

Graph parse_graph(std::istream& in);
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g, GraphKind kind);
std::string serialize_graph(const Graph& g);

struct UnpackResult {
    Graph graph;
    std::vector<NodeId> origin;  // copy -> node of the compressed graph
};

struct UnpackOptions {
    std::size_t max_nodes = 1'000'000;
};

UnpackResult unpack(const Graph& f, const UnpackOptions& opts = {});

} // namespace shexc
