// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/graph.hpp"

#include <set>
#include <tuple>

#include "shexc/error.hpp"

namespace shexc {

std::string_view to_string(GraphKind k) {
    switch (k) {
    case GraphKind::simple: return "simple";
    case GraphKind::shape: return "shape";
    case GraphKind::compressed: return "compressed";
    case GraphKind::general: return "general";
    }
    return "general";
}

std::optional<GraphKind> graph_kind_from_string(std::string_view s) {
    if (s == "simple") return GraphKind::simple;
    if (s == "shape") return GraphKind::shape;
    if (s == "compressed") return GraphKind::compressed;
    if (s == "general") return GraphKind::general;
    return std::nullopt;
}

NodeId Graph::add_node(std::string name) {
    if (index_.contains(name)) throw Error("duplicate node '" + name + "'");
    NodeId id = names_.size();
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    out_.emplace_back();
    return id;
}

NodeId Graph::node(const std::string& name) {
    if (auto it = index_.find(name); it != index_.end()) return it->second;
    return add_node(name);
}

EdgeId Graph::add_edge(NodeId source, std::string label, NodeId target, Interval occur) {
    if (source >= names_.size() || target >= names_.size()) throw Error("edge endpoint is not a node");
    EdgeId id = edges_.size();
    edges_.push_back(Edge{source, std::move(label), target, occur});
    out_[source].push_back(id);
    return id;
}

std::optional<NodeId> Graph::find(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
    return std::nullopt;
}

std::vector<EdgeId> Graph::in(NodeId n) const {
    std::vector<EdgeId> r;
    for (EdgeId e = 0; e < edges_.size(); ++e)
        if (edges_[e].target == n) r.push_back(e);
    return r;
}

namespace {
bool no_parallel(const std::vector<Edge>& edges) {
    std::set<std::tuple<NodeId, std::string_view, NodeId>> seen;
    for (const auto& e : edges)
        if (!seen.emplace(e.source, e.label, e.target).second) return false;
    return true;
}
} // namespace

bool Graph::is_simple() const {
    for (const auto& e : edges_)
        if (e.occur != Interval::one()) return false;
    return no_parallel(edges_);
}

bool Graph::is_shape() const {
    for (const auto& e : edges_)
        if (!e.occur.basic()) return false;
    return true;
}

bool Graph::is_compressed() const {
    for (const auto& e : edges_)
        if (!e.occur.singleton()) return false;
    return no_parallel(edges_);
}

GraphKind Graph::kind() const {
    if (is_simple()) return GraphKind::simple;
    if (is_compressed()) return GraphKind::compressed;
    if (is_shape()) return GraphKind::shape;
    return GraphKind::general;
}

bool Graph::satisfies(GraphKind k) const {
    switch (k) {
    case GraphKind::simple: return is_simple();
    case GraphKind::shape: return is_shape();
    case GraphKind::compressed: return is_compressed();
    case GraphKind::general: return true;
    }
    return false;
}

std::uint64_t Graph::total_cardinality() const {
    std::uint64_t s = 0;
    for (const auto& e : edges_) s = add_bounds(s, e.occur.max());
    return s;
}

bool Graph::is_deterministic() const {
    for (const auto& out : out_) {
        std::set<std::string_view> labels;
        for (auto e : out)
            if (!labels.insert(edges_[e].label).second) return false;
    }
    return true;
}

} // namespace shexc
