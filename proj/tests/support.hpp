// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared helpers for the test binaries: data files, random instances and
// brute-force oracles that do not reuse the library's algorithms.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "shexc/bag.hpp"
#include "shexc/graph.hpp"
#include "shexc/rbe.hpp"
#include "shexc/routing.hpp"
#include "shexc/schema.hpp"
#include "shexc/validation.hpp"

namespace testing {

using namespace shexc;
using Rng = std::mt19937_64;
using Counts = std::vector<std::uint64_t>;

inline std::string data_path(const std::string& name) { return std::string(SHEXC_DATA_DIR) + "/" + name; }

inline std::string read_data(const std::string& name) {
    std::ifstream in(data_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Graph data_graph(const std::string& name) { return parse_graph(read_data(name)); }
inline Schema data_schema(const std::string& name) { return parse_schema(read_data(name)); }

inline std::uint64_t pick(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

// ---------------------------------------------------------------------------
// Language oracle: every bag of L(e) with at most `limit` elements, computed
// bottom-up by set operations on count vectors.

inline std::set<Counts> language(const Rbe& e, std::size_t dim, std::uint64_t limit) {
    auto total = [](const Counts& c) {
        std::uint64_t s = 0;
        for (auto x : c) s += x;
        return s;
    };
    auto sums = [&](const std::set<Counts>& a, const std::set<Counts>& b) {
        std::set<Counts> r;
        for (const auto& x : a)
            for (const auto& y : b) {
                Counts z(dim);
                for (std::size_t i = 0; i < dim; ++i) z[i] = x[i] + y[i];
                if (total(z) <= limit) r.insert(z);
            }
        return r;
    };
    using K = Rbe::Kind;
    switch (e.kind()) {
    case K::empty: return {};
    case K::epsilon: return {Counts(dim, 0)};
    case K::symbol: {
        if (limit == 0) return {};
        Counts c(dim, 0);
        c[e.sym()] = 1;
        return {c};
    }
    case K::disj: {
        auto a = language(e.left(), dim, limit);
        auto b = language(e.right(), dim, limit);
        a.insert(b.begin(), b.end());
        return a;
    }
    case K::concat: return sums(language(e.left(), dim, limit), language(e.right(), dim, limit));
    case K::intersect: {
        auto a = language(e.left(), dim, limit);
        auto b = language(e.right(), dim, limit);
        std::set<Counts> r;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.begin()));
        return r;
    }
    case K::repeat: {
        auto body = language(e.left(), dim, limit);
        const auto& iv = e.interval();
        // Powers beyond min + limit + 1 add nothing new within the size limit.
        std::uint64_t top = iv.unbounded() ? iv.min() + limit + 1 : std::min(iv.max(), iv.min() + limit + 1);
        std::set<Counts> power{Counts(dim, 0)}, out;
        for (std::uint64_t i = 0; i <= top; ++i) {
            if (i >= iv.min()) out.insert(power.begin(), power.end());
            if (power.empty()) break;
            power = sums(power, body);
        }
        return out;
    }
    }
    return {};
}

// All count vectors over dim symbols with total <= limit.
inline std::vector<Counts> all_bags(std::size_t dim, std::uint64_t limit) {
    std::vector<Counts> out;
    Counts c(dim, 0);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
        if (i == dim) {
            out.push_back(c);
            return;
        }
        for (std::uint64_t k = 0; k <= left; ++k) {
            c[i] = k;
            rec(i + 1, left - k);
        }
        c[i] = 0;
    };
    rec(0, limit);
    return out;
}

inline Bag to_bag(const Counts& c) {
    Bag b(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) b.set(static_cast<Symbol>(i), c[i]);
    return b;
}

// ---------------------------------------------------------------------------
// Random expressions.

inline Interval random_basic(Rng& rng) {
    static const Interval basics[] = {Interval::one(), Interval::opt(), Interval::plus(), Interval::star()};
    return basics[pick(rng, 0, 3)];
}

inline Interval random_interval(Rng& rng) {
    switch (pick(rng, 0, 5)) {
    case 0: return random_basic(rng);
    case 1: return Interval::exactly(pick(rng, 0, 3));
    case 2: {
        auto lo = pick(rng, 0, 2);
        return Interval(lo, lo + pick(rng, 0, 2));
    }
    case 3: return Interval(pick(rng, 0, 3), Interval::inf);
    default: return random_basic(rng);
    }
}

// Random expression over `dim` symbols; intersections only outside repetitions
// when allow_intersect is set.
inline Rbe random_rbe(Rng& rng, std::size_t dim, int depth, bool allow_intersect) {
    if (depth == 0 || pick(rng, 0, 3) == 0) {
        if (pick(rng, 0, 9) == 0) return Rbe::epsilon();
        return Rbe::symbol(static_cast<Symbol>(pick(rng, 0, dim - 1)));
    }
    switch (pick(rng, 0, allow_intersect ? 3 : 2)) {
    case 0: return Rbe::disj(random_rbe(rng, dim, depth - 1, allow_intersect), random_rbe(rng, dim, depth - 1, allow_intersect));
    case 1: return Rbe::concat(random_rbe(rng, dim, depth - 1, allow_intersect), random_rbe(rng, dim, depth - 1, allow_intersect));
    case 2: return Rbe::repeat(random_rbe(rng, dim, depth - 1, false), random_interval(rng));
    default: return Rbe::intersect(random_rbe(rng, dim, depth - 1, true), random_rbe(rng, dim, depth - 1, true));
    }
}

// ---------------------------------------------------------------------------
// Routing oracle: tries every source -> sink map.

inline bool routing_ok(const RoutingInstance& inst, const Routing& r) {
    const std::size_t nu = inst.sinks.size();
    std::vector<std::uint64_t> lo(nu, 0), hi(nu, 0);
    for (std::size_t v = 0; v < r.size(); ++v) {
        if (!inst.allowed[v][r[v]]) return false;
        lo[r[v]] += inst.sources[v].min();
        hi[r[v]] = inst.sources[v].unbounded() || hi[r[v]] == Interval::inf ? Interval::inf : hi[r[v]] + inst.sources[v].max();
    }
    for (std::size_t u = 0; u < nu; ++u) {
        if (lo[u] < inst.sinks[u].min()) return false;
        if (!inst.sinks[u].unbounded() && hi[u] > inst.sinks[u].max()) return false;
    }
    return true;
}

inline bool routing_exists_brute(const RoutingInstance& inst) {
    const std::size_t nv = inst.sources.size(), nu = inst.sinks.size();
    if (nv == 0) return routing_ok(inst, {});
    if (nu == 0) return false;
    Routing r(nv, 0);
    for (;;) {
        if (routing_ok(inst, r)) return true;
        std::size_t i = 0;
        while (i < nv && ++r[i] == nu) r[i++] = 0;
        if (i == nv) return false;
    }
}

// Maximal simulation by plain fixpoint iteration with the brute-force router.
inline std::set<std::pair<NodeId, NodeId>> simulation_brute(const Graph& g, const Graph& h) {
    std::set<std::pair<NodeId, NodeId>> r;
    for (NodeId n = 0; n < g.node_count(); ++n)
        for (NodeId m = 0; m < h.node_count(); ++m) r.insert({n, m});
    for (bool changed = true; changed;) {
        changed = false;
        for (auto it = r.begin(); it != r.end();) {
            auto [n, m] = *it;
            std::vector<Interval> src, snk;
            for (auto e : g.out(n)) src.push_back(g.edge(e).occur);
            for (auto f : h.out(m)) snk.push_back(h.edge(f).occur);
            RoutingInstance inst(src, snk);
            for (std::size_t i = 0; i < src.size(); ++i)
                for (std::size_t j = 0; j < snk.size(); ++j) {
                    const auto& e = g.edge(g.out(n)[i]);
                    const auto& f = h.edge(h.out(m)[j]);
                    if (e.label == f.label && r.count({e.target, f.target})) inst.allow(i, j);
                }
            if (!routing_exists_brute(inst)) {
                it = r.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return r;
}

// Maximal typing of a simple graph by fixpoint: n keeps t while some choice of
// one atom a::u per out-edge (u in the current types of the target) yields a
// bag in the language oracle of def(t).
inline std::vector<std::set<TypeId>> typing_brute(const Graph& g, const Schema& s) {
    const std::size_t dim = s.atoms().size();
    std::vector<std::set<TypeId>> typ(g.node_count());
    for (auto& ts : typ)
        for (TypeId t = 0; t < s.type_count(); ++t) ts.insert(t);
    auto ok = [&](NodeId n, TypeId t) {
        const auto& out = g.out(n);
        auto lang = language(s.def(t), dim, out.size());
        std::vector<std::vector<Symbol>> opts(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto& e = g.edge(out[i]);
            for (TypeId u : typ[e.target])
                if (auto a = s.find_atom(e.label, u)) opts[i].push_back(*a);
            if (opts[i].empty()) return false;
        }
        std::vector<std::size_t> idx(out.size(), 0);
        for (;;) {
            Counts c(dim, 0);
            for (std::size_t i = 0; i < out.size(); ++i) ++c[opts[i][idx[i]]];
            if (lang.count(c)) return true;
            std::size_t i = 0;
            while (i < out.size() && ++idx[i] == opts[i].size()) idx[i++] = 0;
            if (i == out.size()) return false;
        }
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (NodeId n = 0; n < g.node_count(); ++n)
            for (auto it = typ[n].begin(); it != typ[n].end();) {
                if (!ok(n, *it)) {
                    it = typ[n].erase(it);
                    changed = true;
                } else {
                    ++it;
                }
            }
    }
    return typ;
}

inline std::vector<std::set<TypeId>> as_sets(const Typing& t) {
    std::vector<std::set<TypeId>> r(t.node_count());
    for (NodeId n = 0; n < t.node_count(); ++n)
        for (auto x : t.types(n).elements()) r[n].insert(x);
    return r;
}

// ---------------------------------------------------------------------------
// Random graphs and schemas.

inline Graph random_shape_graph(Rng& rng, std::size_t nodes, std::size_t edges, const std::vector<std::string>& labels) {
    Graph g;
    for (std::size_t i = 0; i < nodes; ++i) g.add_node("v" + std::to_string(i));
    std::set<std::tuple<NodeId, std::string, NodeId>> seen;
    for (std::size_t k = 0; k < edges; ++k) {
        NodeId s = pick(rng, 0, nodes - 1), t = pick(rng, 0, nodes - 1);
        std::string l = labels[pick(rng, 0, labels.size() - 1)];
        if (!seen.insert({s, l, t}).second) continue;
        g.add_edge(s, l, t, random_basic(rng));
    }
    return g;
}

inline Graph random_simple_graph(Rng& rng, std::size_t nodes, std::size_t edges, const std::vector<std::string>& labels) {
    Graph g;
    for (std::size_t i = 0; i < nodes; ++i) g.add_node("v" + std::to_string(i));
    std::set<std::tuple<NodeId, std::string, NodeId>> seen;
    for (std::size_t k = 0; k < edges; ++k) {
        NodeId s = pick(rng, 0, nodes - 1), t = pick(rng, 0, nodes - 1);
        std::string l = labels[pick(rng, 0, labels.size() - 1)];
        if (seen.insert({s, l, t}).second) g.add_edge(s, l, t);
    }
    return g;
}

// Deterministic shape graph (one edge per label and source) with intervals
// from {1, ?, *}; rejected until it classifies as DetShEx0Minus.
inline Schema random_minus_schema(Rng& rng, std::size_t max_types, const std::vector<std::string>& labels) {
    for (;;) {
        std::size_t n = pick(rng, 1, max_types);
        Graph g;
        for (std::size_t i = 0; i < n; ++i) g.add_node("T" + std::to_string(i));
        for (NodeId s = 0; s < n; ++s)
            for (const auto& l : labels) {
                if (pick(rng, 0, 2) == 0) continue;
                static const Interval ivs[] = {Interval::one(), Interval::star(), Interval::star(), Interval::opt()};
                g.add_edge(s, l, pick(rng, 0, n - 1), ivs[pick(rng, 0, 3)]);
            }
        Schema s = from_shape_graph(g);
        if (classify(s).cls == SchemaClass::det_shex0_minus) return s;
    }
}

} // namespace testing
