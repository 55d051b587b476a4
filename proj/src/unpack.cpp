// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <string>

#include "shexc/error.hpp"
#include "shexc/graph.hpp"

namespace shexc {

namespace {

// Iterative Tarjan. Components come out in reverse topological order.
std::vector<std::size_t> strongly_connected(const Graph& g, std::size_t& count) {
    const std::size_t n = g.node_count();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeId> stack;
    std::size_t next = 0;
    count = 0;
    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != unset) continue;
        std::vector<std::pair<NodeId, std::size_t>> call{{root, 0}};
        index[root] = low[root] = next++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            const auto& out = g.out(v);
            if (pos < out.size()) {
                NodeId w = g.edge(out[pos++]).target;
                if (index[w] == unset) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                NodeId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
            NodeId done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comp;
}

} // namespace

UnpackResult unpack(const Graph& f, const UnpackOptions& opts) {
    if (!f.is_compressed()) throw PreconditionError("unpack needs a compressed graph");
    std::size_t ncomp = 0;
    auto comp = strongly_connected(f, ncomp);
    std::vector<std::vector<NodeId>> members(ncomp);
    for (NodeId v = 0; v < f.node_count(); ++v) members[comp[v]].push_back(v);

    auto cap = static_cast<Interval::Bound>(opts.max_nodes);
    auto over = [&](Interval::Bound x) { return x > cap; };
    auto budget_error = [&] {
        return BudgetExceeded("unpacking needs more than " + std::to_string(opts.max_nodes) + " nodes");
    };

    // Sources' components finish later in Tarjan order, so walk it backwards.
    std::vector<Interval::Bound> copies(f.node_count(), 0);
    std::vector<Interval::Bound> inflow(f.node_count(), 0);
    for (std::size_t c = ncomp; c-- > 0;) {
        bool cyclic = members[c].size() > 1;
        for (auto v : members[c])
            for (auto e : f.out(v))
                if (f.edge(e).target == v) cyclic = true;
        for (auto v : members[c]) {
            Interval::Bound need = std::max<Interval::Bound>(1, inflow[v]);
            if (cyclic)
                for (auto e : f.in(v))
                    if (comp[f.edge(e).source] == c) need = std::max(need, f.edge(e).occur.min());
            if (over(need)) throw budget_error();
            copies[v] = need;
        }
        for (auto v : members[c])
            for (auto e : f.out(v)) {
                const auto& ed = f.edge(e);
                if (comp[ed.target] == c) continue;
                Interval::Bound add;
                try {
                    add = add_bounds(inflow[ed.target], mul_bounds(ed.occur.min(), copies[v]));
                } catch (const Error&) {
                    throw budget_error();
                }
                if (over(add)) throw budget_error();
                inflow[ed.target] = add;
            }
    }
    Interval::Bound total = 0;
    for (auto c : copies) {
        total += c;
        if (over(total)) throw budget_error();
    }

    UnpackResult r;
    std::vector<NodeId> first(f.node_count());
    for (NodeId v = 0; v < f.node_count(); ++v) {
        first[v] = r.graph.node_count();
        for (Interval::Bound i = 0; i < copies[v]; ++i) {
            std::string name = copies[v] == 1 ? f.name(v) : f.name(v) + "~" + std::to_string(i);
            while (r.graph.find(name)) name += "~";
            r.graph.add_node(std::move(name));
            r.origin.push_back(v);
        }
    }
    // One cursor per target: consecutive copies, wrapping in cyclic parts.
    // k <= copies(target) always holds, so the k targets of one copy are distinct.
    std::vector<Interval::Bound> cursor(f.node_count(), 0);
    for (NodeId v = 0; v < f.node_count(); ++v)
        for (Interval::Bound i = 0; i < copies[v]; ++i)
            for (auto e : f.out(v)) {
                const auto& ed = f.edge(e);
                for (Interval::Bound j = 0; j < ed.occur.min(); ++j) {
                    auto t = cursor[ed.target]++ % copies[ed.target];
                    r.graph.add_edge(first[v] + i, ed.label, first[ed.target] + t);
                }
            }
    return r;
}

} // namespace shexc
