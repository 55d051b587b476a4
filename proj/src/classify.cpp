// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <set>

#include "shexc/schema.hpp"

namespace shexc {

std::string_view to_string(SchemaClass c) {
    switch (c) {
    case SchemaClass::shex: return "ShEx";
    case SchemaClass::shex0: return "ShEx0";
    case SchemaClass::det_shex0: return "DetShEx0";
    case SchemaClass::det_shex0_minus: return "DetShEx0Minus";
    }
    return "ShEx";
}

// Least fixpoint: a reference is closed when it is a *-edge, or when its
// source is referenced and every reference to the source is already closed.
// A cycle of non-* references therefore never closes itself.
std::vector<bool> star_closed_references(const Graph& shape) {
    std::vector<bool> closed(shape.edge_count(), false);
    std::vector<std::vector<EdgeId>> in(shape.node_count());
    for (EdgeId e = 0; e < shape.edge_count(); ++e) {
        in[shape.edge(e).target].push_back(e);
        if (shape.edge(e).occur == Interval::star()) closed[e] = true;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (EdgeId e = 0; e < shape.edge_count(); ++e) {
            if (closed[e]) continue;
            const auto& refs = in[shape.edge(e).source];
            if (refs.empty()) continue;
            bool all = true;
            for (auto r : refs) all = all && closed[r];
            if (all) closed[e] = changed = true;
        }
    }
    return closed;
}

Classification classify(const Schema& s) {
    Classification c{SchemaClass::det_shex0_minus, {}};
    auto demote = [&](SchemaClass to) {
        if (static_cast<int>(to) < static_cast<int>(c.cls)) c.cls = to;
    };
    for (TypeId t = 0; t < s.type_count(); ++t)
        if (!to_rbe0(s.def(t))) {
            c.diagnostics.push_back("ShEx0: type " + s.type_name(t) + " is not defined by an RBE0 expression");
            demote(SchemaClass::shex);
        }
    if (c.cls == SchemaClass::shex) return c;

    Graph g = to_shape_graph(s);
    for (NodeId n = 0; n < g.node_count(); ++n) {
        std::set<std::string> seen, reported;
        for (auto e : g.out(n)) {
            const auto& l = g.edge(e).label;
            if (!seen.insert(l).second && reported.insert(l).second) {
                c.diagnostics.push_back("DetShEx0: type " + g.name(n) + " uses label " + l + " twice");
                demote(SchemaClass::shex0);
            }
        }
    }
    for (const auto& e : g.edges())
        if (e.occur == Interval::plus()) {
            c.diagnostics.push_back("DetShEx0Minus: type " + g.name(e.source) + " uses + on " + e.label + "::" +
                                    g.name(e.target));
            demote(SchemaClass::det_shex0);
        }
    auto closed = star_closed_references(g);
    for (NodeId n = 0; n < g.node_count(); ++n) {
        bool uses_opt = false;
        for (auto e : g.out(n)) uses_opt = uses_opt || g.edge(e).occur == Interval::opt();
        if (!uses_opt) continue;
        auto refs = g.in(n);
        if (refs.empty()) {
            c.diagnostics.push_back("DetShEx0Minus: type " + g.name(n) + " uses ? but is never referenced");
            demote(SchemaClass::det_shex0);
            continue;
        }
        for (auto r : refs)
            if (!closed[r]) {
                const auto& ed = g.edge(r);
                c.diagnostics.push_back("DetShEx0Minus: type " + g.name(n) + " uses ? but the reference " +
                                        g.name(ed.source) + " -" + ed.label + "-> " + g.name(n) + " is not *-closed");
                demote(SchemaClass::det_shex0);
            }
    }
    return c;
}

} // namespace shexc
