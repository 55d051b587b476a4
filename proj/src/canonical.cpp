// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/canonical.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>

namespace shexc {

namespace {

using Colours = std::vector<std::uint64_t>;

struct Prepared {
    std::size_t n = 0;
    // (label id, min, max, other endpoint)
    std::vector<std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, NodeId>>> out, in;
};

Prepared prepare(const Graph& g) {
    std::map<std::string, std::uint64_t> labels;
    for (const auto& e : g.edges()) labels.emplace(e.label, 0);
    std::uint64_t id = 0;
    for (auto& [l, v] : labels) v = id++;
    Prepared p;
    p.n = g.node_count();
    p.out.resize(p.n);
    p.in.resize(p.n);
    for (const auto& e : g.edges()) {
        auto l = labels[e.label];
        p.out[e.source].emplace_back(l, e.occur.min(), e.occur.max(), e.target);
        p.in[e.target].emplace_back(l, e.occur.min(), e.occur.max(), e.source);
    }
    return p;
}

// Replaces each colour by the rank of (colour, neighbourhood) until stable.
void refine(const Prepared& p, Colours& col) {
    for (;;) {
        std::vector<std::vector<std::uint64_t>> sig(p.n);
        for (NodeId v = 0; v < p.n; ++v) {
            auto& s = sig[v];
            s.push_back(col[v]);
            for (const auto* side : {&p.out[v], &p.in[v]}) {
                std::vector<std::array<std::uint64_t, 4>> items;
                for (const auto& [l, lo, hi, w] : *side) items.push_back({l, lo, hi, col[w]});
                std::sort(items.begin(), items.end());
                s.push_back(items.size());
                for (const auto& it : items) s.insert(s.end(), it.begin(), it.end());
            }
        }
        std::vector<NodeId> idx(p.n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](NodeId a, NodeId b) { return sig[a] < sig[b]; });
        Colours next(p.n);
        std::uint64_t rank = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i > 0 && sig[idx[i]] != sig[idx[i - 1]]) ++rank;
            next[idx[i]] = rank;
        }
        auto classes = [](const Colours& c) {
            return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
        };
        bool stable = classes(next) == classes(col);
        col = std::move(next);
        if (stable) return;
    }
}

std::string encode(const Prepared& p, const Colours& col, const Graph& g) {
    // Discrete colouring: colour = canonical position.
    std::vector<std::tuple<std::uint64_t, std::string, std::uint64_t, std::uint64_t, std::uint64_t>> edges;
    for (const auto& e : g.edges()) edges.emplace_back(col[e.source], e.label, col[e.target], e.occur.min(), e.occur.max());
    std::sort(edges.begin(), edges.end());
    std::string code = std::to_string(p.n) + ";";
    for (const auto& [s, l, t, lo, hi] : edges) {
        code += std::to_string(s) + " " + l + " " + std::to_string(t) + " " + std::to_string(lo) + " " +
                (hi == Interval::inf ? std::string("inf") : std::to_string(hi)) + ";";
    }
    return code;
}

void search(const Prepared& p, const Graph& g, Colours col, std::optional<CanonicalForm>& best) {
    refine(p, col);
    // First non-singleton cell, by colour.
    std::map<std::uint64_t, std::vector<NodeId>> cells;
    for (NodeId v = 0; v < p.n; ++v) cells[col[v]].push_back(v);
    const std::vector<NodeId>* target = nullptr;
    for (const auto& [c, members] : cells)
        if (members.size() > 1) {
            target = &members;
            break;
        }
    if (!target) {
        auto code = encode(p, col, g);
        if (!best || code < best->code) {
            CanonicalForm f;
            f.code = std::move(code);
            f.order.resize(p.n);
            for (NodeId v = 0; v < p.n; ++v) f.order[col[v]] = v;
            best = std::move(f);
        }
        return;
    }
    for (auto v : *target) {
        // Individualised node sorts just before the rest of its cell.
        Colours next(p.n);
        for (NodeId u = 0; u < p.n; ++u) next[u] = 2 * col[u] + 1;
        next[v] = 2 * col[v];
        search(p, g, std::move(next), best);
    }
}

} // namespace

CanonicalForm canonical_form(const Graph& g) {
    auto p = prepare(g);
    std::optional<CanonicalForm> best;
    search(p, g, Colours(p.n, 0), best);
    if (!best) return CanonicalForm{"0;", {}};
    return *best;
}

Graph canonical_graph(const Graph& g) {
    auto f = canonical_form(g);
    std::vector<NodeId> pos(g.node_count());
    for (std::size_t i = 0; i < f.order.size(); ++i) pos[f.order[i]] = i;
    Graph c;
    for (std::size_t i = 0; i < g.node_count(); ++i) c.add_node("n" + std::to_string(i));
    std::vector<std::tuple<NodeId, std::string, NodeId, Interval>> edges;
    for (const auto& e : g.edges()) edges.emplace_back(pos[e.source], e.label, pos[e.target], e.occur);
    std::sort(edges.begin(), edges.end());
    for (const auto& [s, l, t, o] : edges) c.add_edge(s, l, t, o);
    return c;
}

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
    return canonical_form(a).code == canonical_form(b).code;
}

} // namespace shexc
