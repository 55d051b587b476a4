// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/embedding.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace shexc {

std::size_t SimulationRelation::size() const {
    return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), 1));
}

std::vector<std::pair<NodeId, NodeId>> SimulationRelation::pairs() const {
    std::vector<std::pair<NodeId, NodeId>> r;
    for (NodeId n = 0; n < g_; ++n)
        for (NodeId m = 0; m < h_; ++m)
            if (contains(n, m)) r.emplace_back(n, m);
    return r;
}

bool SimulationRelation::total() const {
    for (NodeId n = 0; n < g_; ++n) {
        bool any = false;
        for (NodeId m = 0; m < h_ && !any; ++m) any = contains(n, m);
        if (!any) return false;
    }
    return true;
}

RoutingInstance routing_instance(const Graph& g, const Graph& h, const SimulationRelation& r, NodeId n, NodeId m) {
    std::vector<Interval> src, snk;
    for (auto e : g.out(n)) src.push_back(g.edge(e).occur);
    for (auto f : h.out(m)) snk.push_back(h.edge(f).occur);
    RoutingInstance inst(std::move(src), std::move(snk));
    const auto& go = g.out(n);
    const auto& ho = h.out(m);
    for (std::size_t i = 0; i < go.size(); ++i)
        for (std::size_t j = 0; j < ho.size(); ++j) {
            const auto& e = g.edge(go[i]);
            const auto& f = h.edge(ho[j]);
            if (e.label == f.label && r.contains(e.target, f.target)) inst.allow(i, j);
        }
    return inst;
}

namespace {

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count < 2 * jobs) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    std::size_t chunk = (count + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j)
        pool.emplace_back([&, j] {
            try {
                for (std::size_t i = j * chunk; i < std::min(count, (j + 1) * chunk); ++i) body(i);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

SimulationRelation max_simulation(const Graph& g, const Graph& h, const SimulationOptions& opts,
                                  SimulationStats* stats) {
    SimulationRelation r(g.node_count(), h.node_count(), true);
    if (stats) *stats = SimulationStats{0, {r.size()}};
    for (;;) {
        auto pairs = r.pairs();
        std::vector<std::optional<Routing>> found(pairs.size());
        // Every witness in a round is computed against the same snapshot r.
        parallel_for(pairs.size(), opts.jobs, [&](std::size_t i) {
            auto [n, m] = pairs[i];
            found[i] = find_routing(routing_instance(g, h, r, n, m), opts.limits);
        });
        SimulationRelation next = r;
        bool changed = false;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (!found[i]) {
                next.set(pairs[i].first, pairs[i].second, false);
                changed = true;
            }
        if (stats) {
            ++stats->rounds;
            stats->sizes.push_back(next.size());
        }
        if (!changed) {
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                auto [n, m] = pairs[i];
                std::vector<EdgeId> lambda;
                const auto& ho = h.out(m);
                for (auto j : *found[i]) lambda.push_back(ho[j]);
                r.witnesses[pairs[i]] = std::move(lambda);
            }
            return r;
        }
        r = std::move(next);
    }
}

EmbeddingResult embeds(const Graph& g, const Graph& h, const SimulationOptions& opts) {
    EmbeddingResult res;
    res.relation = max_simulation(g, h, opts);
    res.embeds = res.relation.total();
    return res;
}

bool verify_witness(const Graph& g, const Graph& h, const SimulationRelation& r, NodeId n, NodeId m,
                    const std::vector<EdgeId>& lambda) {
    const auto& go = g.out(n);
    if (lambda.size() != go.size()) return false;
    const auto& ho = h.out(m);
    std::vector<std::vector<Interval>> pre(h.edge_count());
    for (std::size_t i = 0; i < go.size(); ++i) {
        EdgeId f = lambda[i];
        if (f >= h.edge_count() || std::find(ho.begin(), ho.end(), f) == ho.end()) return false;
        const auto& e = g.edge(go[i]);
        const auto& fe = h.edge(f);
        if (e.label != fe.label) return false;                 // condition 1
        if (!r.contains(e.target, fe.target)) return false;    // condition 2
        pre[f].push_back(e.occur);
    }
    for (auto f : ho)                                           // condition 3
        if (!interval_subset(interval_sum(pre[f]), h.edge(f).occur)) return false;
    return true;
}

bool verify_simulation(const Graph& g, const Graph& h, const SimulationRelation& r) {
    for (auto [n, m] : r.pairs()) {
        auto it = r.witnesses.find({n, m});
        if (it == r.witnesses.end() || !verify_witness(g, h, r, n, m, it->second)) return false;
    }
    return true;
}

std::string embedding_dump(const Graph& g, const Graph& h, const SimulationRelation& r) {
    auto edge = [](const Graph& x, EdgeId e) {
        const auto& ed = x.edge(e);
        return "edge(" + x.name(ed.source) + "," + ed.label + "," + x.name(ed.target) + ")";
    };
    std::string out;
    auto pairs = r.pairs();
    for (auto [n, m] : pairs) out += g.name(n) + "\t" + h.name(m) + "\n";
    for (auto [n, m] : pairs) {
        auto it = r.witnesses.find({n, m});
        if (it == r.witnesses.end()) continue;
        out += "\n" + g.name(n) + "\t" + h.name(m) + "\n";
        const auto& go = g.out(n);
        for (std::size_t i = 0; i < go.size(); ++i) out += "  " + edge(g, go[i]) + " => " + edge(h, it->second[i]) + "\n";
    }
    return out;
}

} // namespace shexc
