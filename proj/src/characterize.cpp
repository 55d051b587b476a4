// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>
#include <stdexcept>

#include "shexc/containment.hpp"
#include "shexc/embedding.hpp"
#include "shexc/error.hpp"

namespace shexc {

namespace {

void require_minus(const Schema& s, const char* which) {
    auto c = classify(s);
    if (c.cls == SchemaClass::det_shex0_minus) return;
    std::string why = c.diagnostics.empty() ? std::string(to_string(c.cls)) : c.diagnostics.front();
    throw PreconditionError(std::string(which) + " schema is not DetShEx0Minus: " + why);
}

} // namespace

bool contains_detshex0minus(const Schema& h, const Schema& k) {
    require_minus(h, "first");
    require_minus(k, "second");
    return embeds(to_shape_graph(h), to_shape_graph(k)).embeds;
}

// Each type t gets a family of size(t) nodes: F(t) "full" nodes carrying
// every ?-edge, then, when t has ?-edges, one "bare" node without them.
// The full/bare split realises each ?-edge once and zero times. 1- and
// ?-edges of node i go to member i mod size(u) of the target family, which
// makes sizes propagate upwards so that the ?-variants below stay
// distinguishable. A *-edge is realised on the first member only, pointing
// at the whole target family (plus a duplicate when that family has a
// single member), so every *-edge has at least two children. Other members
// take zero children, which * allows.
Graph characterizing_graph(const Schema& h) {
    require_minus(h, "input");
    Graph s = to_shape_graph(h);
    const std::size_t n = s.node_count();
    std::vector<std::size_t> bare(n, 0);
    for (const auto& e : s.edges())
        if (e.occur == Interval::opt()) bare[e.source] = 1;

    std::vector<std::size_t> full(n, 1), size(n);
    for (NodeId t = 0; t < n; ++t) size[t] = full[t] + bare[t];
    // Upward fixpoint. On DetShEx0Minus inputs every ?-edge sits below a
    // *-edge, which cuts the cycles along which sizes could grow forever.
    const std::size_t limit = n * (2 + s.edge_count()) + 2;
    for (bool changed = true; changed;) {
        changed = false;
        for (NodeId t = 0; t < n; ++t) {
            std::size_t f = 1;
            for (auto e : s.out(t)) {
                const auto& ed = s.edge(e);
                if (ed.occur == Interval::one())
                    f = std::max(f, size[ed.target] > bare[t] ? size[ed.target] - bare[t] : std::size_t{1});
                else if (ed.occur == Interval::opt())
                    f = std::max(f, size[ed.target]);
            }
            if (f != full[t]) {
                full[t] = f;
                size[t] = f + bare[t];
                changed = true;
                if (size[t] > limit) throw std::logic_error("characterizing graph: family sizes diverge");
            }
        }
    }

    Graph g;
    std::vector<std::vector<NodeId>> fam(n);
    for (NodeId t = 0; t < n; ++t)
        for (std::size_t i = 0; i < size[t]; ++i)
            fam[t].push_back(g.add_node(s.name(t) + "_" + std::to_string(i)));

    // Out-edges of one family member, excluding the *-children, which are
    // added below so that duplicates can copy them.
    std::vector<std::vector<std::pair<std::string, NodeId>>> outs(g.node_count());
    for (NodeId t = 0; t < n; ++t)
        for (std::size_t i = 0; i < size[t]; ++i)
            for (auto e : s.out(t)) {
                const auto& ed = s.edge(e);
                bool is_full = i < full[t];
                if (ed.occur == Interval::one() || (ed.occur == Interval::opt() && is_full))
                    outs[fam[t][i]].emplace_back(ed.label, fam[ed.target][i % size[ed.target]]);
            }
    // *-children, wired after the duplicates exist.
    std::vector<std::pair<NodeId, std::pair<std::string, NodeId>>> star;
    for (NodeId t = 0; t < n; ++t)
        for (auto e : s.out(t)) {
            const auto& ed = s.edge(e);
            if (ed.occur != Interval::star()) continue;
            NodeId first = fam[t][0];
            for (auto c : fam[ed.target]) star.push_back({first, {ed.label, c}});
            if (size[ed.target] == 1) {
                NodeId dup = g.add_node(s.name(ed.target) + "_dup_" + s.name(t) + "_" + ed.label);
                outs.emplace_back();
                star.push_back({first, {ed.label, dup}});
                star.push_back({dup, {"", fam[ed.target][0]}});  // marker: copy out-edges of this node
            }
        }
    // Duplicates copy the full out-edge list of their original, *-children included.
    std::map<NodeId, NodeId> copy_of;
    for (const auto& [src, le] : star)
        if (le.first.empty()) copy_of[src] = le.second;
    for (const auto& [src, le] : star)
        if (!le.first.empty()) outs[src].push_back(le);
    for (const auto& [dup, orig] : copy_of) outs[dup] = outs[orig];
    for (NodeId v = 0; v < g.node_count(); ++v)
        for (const auto& [l, t] : outs[v]) g.add_edge(v, l, t);
    return g;
}

std::vector<Kind> kinds(const Graph& g, const Schema& h, const Schema& k, const ValidationOptions& opts) {
    auto th = max_typing(g, h, opts);
    auto tk = max_typing(g, k, opts);
    std::vector<Kind> out;
    for (NodeId n = 0; n < g.node_count(); ++n) out.push_back({th.types(n), tk.types(n)});
    return out;
}

Graph fuse_to_compressed(const Graph& g, const Schema& h, const Schema& k, const ValidationOptions& opts) {
    auto ks = kinds(g, h, k, opts);
    std::map<Kind, NodeId> index;  // kind -> fused node
    std::vector<NodeId> rep;       // fused node -> representative
    std::vector<NodeId> fused(g.node_count());
    Graph f;
    for (NodeId n = 0; n < g.node_count(); ++n) {
        auto [it, fresh] = index.emplace(ks[n], rep.size());
        if (fresh) {
            rep.push_back(n);
            f.add_node(g.name(n));
        }
        fused[n] = it->second;
    }
    for (NodeId c = 0; c < rep.size(); ++c) {
        // Count the representative's a-edges per target kind, in first-seen order.
        std::vector<std::pair<std::pair<std::string, NodeId>, std::uint64_t>> counts;
        for (auto e : g.out(rep[c])) {
            const auto& ed = g.edge(e);
            std::pair<std::string, NodeId> key{ed.label, fused[ed.target]};
            auto it = std::find_if(counts.begin(), counts.end(), [&](const auto& p) { return p.first == key; });
            if (it == counts.end())
                counts.push_back({key, ed.occur.min()});
            else
                it->second += ed.occur.min();
        }
        for (const auto& [key, cnt] : counts) f.add_edge(c, key.first, key.second, Interval::exactly(cnt));
    }
    return f;
}

} // namespace shexc
