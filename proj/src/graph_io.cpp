// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <set>
#include <sstream>
#include <tuple>

#include "shexc/error.hpp"
#include "shexc/graph.hpp"

namespace shexc {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> split_line(std::string_view line) {
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        toks.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return toks;
}

} // namespace

Graph parse_graph(std::istream& in) {
    Graph g;
    std::optional<GraphKind> kind;
    std::set<std::tuple<NodeId, std::string, NodeId>> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_line(line);
        if (toks.empty()) continue;
        if (!kind) {
            if (toks[0].text != "graph" || toks.size() != 2)
                throw ParseError(lineno, toks[0].column, "expected header 'graph <simple|shape|compressed|general>'");
            kind = graph_kind_from_string(toks[1].text);
            if (!kind) throw ParseError(lineno, toks[1].column, "unknown graph kind '" + std::string(toks[1].text) + "'");
            continue;
        }
        if (toks[0].text == "node" && toks.size() == 2) {
            g.node(std::string(toks[1].text));
            continue;
        }
        if (toks.size() != 3 && toks.size() != 4)
            throw ParseError(lineno, toks[0].column, "expected 'source label target [occur]'");
        Interval occur = Interval::one();
        if (toks.size() == 4) {
            try {
                occur = parse_interval(toks[3].text);
            } catch (const ParseError&) {
                throw;
            } catch (const Error& ex) {
                throw ParseError(lineno, toks[3].column, ex.what());
            }
        }
        NodeId s = g.node(std::string(toks[0].text));
        NodeId t = g.node(std::string(toks[2].text));
        std::string label(toks[1].text);
        bool fresh = seen.emplace(s, label, t).second;
        auto violation = [&](const std::string& why) {
            throw ParseError(lineno, toks[0].column,
                             "edge '" + std::string(toks[0].text) + " " + label + " " + std::string(toks[2].text) + " " +
                                 occur.str() + "' violates the " + std::string(to_string(*kind)) + " header: " + why);
        };
        switch (*kind) {
        case GraphKind::simple:
            if (occur != Interval::one()) violation("occurrence must be 1");
            if (!fresh) violation("duplicate (source, label, target)");
            break;
        case GraphKind::shape:
            if (!occur.basic()) violation("occurrence " + occur.str() + " is not basic");
            break;
        case GraphKind::compressed:
            if (!occur.singleton()) violation("occurrence " + occur.str() + " is not a singleton");
            if (!fresh) violation("duplicate (source, label, target)");
            break;
        case GraphKind::general: break;
        }
        g.add_edge(s, std::move(label), t, occur);
    }
    if (!kind) throw ParseError(lineno + 1, 1, "missing header 'graph <kind>'");
    return g;
}

Graph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_graph(in);
}

std::string serialize_graph(const Graph& g, GraphKind kind) {
    std::ostringstream out;
    out << "graph " << to_string(kind) << "\n";
    // Emit node lines only when the edge list alone would not reproduce the
    // node order, or for isolated nodes.
    std::vector<NodeId> appearance;
    std::vector<bool> seen(g.node_count(), false);
    for (const auto& e : g.edges())
        for (auto n : {e.source, e.target})
            if (!seen[n]) {
                seen[n] = true;
                appearance.push_back(n);
            }
    std::vector<NodeId> isolated;
    for (NodeId n = 0; n < g.node_count(); ++n)
        if (!seen[n]) isolated.push_back(n);
    bool in_order = true;
    for (std::size_t i = 0; i < appearance.size(); ++i)
        if (appearance[i] != i) in_order = false;
    if (!in_order) {
        for (NodeId n = 0; n < g.node_count(); ++n) out << "node " << g.name(n) << "\n";
    }
    for (const auto& e : g.edges()) {
        out << g.name(e.source) << " " << e.label << " " << g.name(e.target);
        if (e.occur != Interval::one()) {
            if (kind == GraphKind::compressed && e.occur.singleton())
                out << " " << e.occur.min();
            else
                out << " " << e.occur.str();
        }
        out << "\n";
    }
    if (in_order)
        for (auto n : isolated) out << "node " << g.name(n) << "\n";
    return out.str();
}

std::string serialize_graph(const Graph& g) { return serialize_graph(g, g.kind()); }

} // namespace shexc
