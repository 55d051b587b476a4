// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "shexc/error.hpp"
#include "shexc/schema.hpp"
#include "support.hpp"

using namespace shexc;

namespace {

// A non-* reference is open when walking references backwards from its source,
// avoiding *-edges, reaches an unreferenced type or goes round a cycle.
std::vector<bool> closed_brute(const Graph& g) {
    std::vector<bool> closed(g.edge_count());
    auto non_star_in = [&](NodeId n) {
        std::vector<NodeId> r;
        for (auto e : g.in(n))
            if (g.edge(e).occur != Interval::star()) r.push_back(g.edge(e).source);
        return r;
    };
    auto back_reach = [&](NodeId from) {
        std::set<NodeId> seen;
        std::vector<NodeId> todo{from};
        while (!todo.empty()) {
            NodeId x = todo.back();
            todo.pop_back();
            for (auto y : non_star_in(x))
                if (seen.insert(y).second) todo.push_back(y);
        }
        return seen;  // nodes reached by at least one backward step
    };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).occur == Interval::star()) {
            closed[e] = true;
            continue;
        }
        NodeId s = g.edge(e).source;
        auto reach = back_reach(s);
        reach.insert(s);
        bool open = false;
        for (auto x : reach) {
            if (g.in(x).empty()) open = true;
            if (back_reach(x).count(x)) open = true;
        }
        closed[e] = !open;
    }
    return closed;
}

} // namespace

TEST_CASE("parse the bug-report schema") {
    auto s = testing::data_schema("bug_reports.schema");
    CHECK(s.type_count() == 4);
    CHECK(s.type_names() == std::vector<std::string>{"Bug", "User", "Employee", "Literal"});
    CHECK(s.rule_str(0) == "Bug -> descr::Literal, reportedBy::User, reproducedBy::Employee?, related::Bug*");
    CHECK(s.labels() == std::vector<std::string>{"descr", "reportedBy", "reproducedBy", "related", "name", "email"});
    CHECK(s.atom_name(*s.find_atom("related", 0)) == "related::Bug");
    CHECK(parse_schema(serialize_schema(s)).rule_str(1) == s.rule_str(1));
}

TEST_CASE("schema syntax errors carry positions") {
    CHECK_THROWS_AS(parse_schema("schema\nT eps\n"), ParseError);
    CHECK_THROWS_AS(parse_schema("A B -> eps\n"), ParseError);
    CHECK_THROWS_AS(parse_schema("T -> eps\nT -> eps\n"), ParseError);
    CHECK_THROWS_AS(parse_schema("T -> a\n"), ParseError);
    try {
        parse_schema("schema\nT -> a::U\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 9);
    }
}

TEST_CASE("shape graph conversion") {
    auto s = testing::data_schema("s0.schema");
    auto g = to_shape_graph(s);
    auto h = testing::data_graph("h0.graph");
    REQUIRE(g.edge_count() == h.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        CHECK(g.edge(e).label == h.edge(e).label);
        CHECK(g.name(g.edge(e).target) == h.name(h.edge(e).target));
        CHECK(g.edge(e).occur == h.edge(e).occur);
    }
    CHECK(serialize_schema(from_shape_graph(h)) == serialize_schema(s));
    CHECK_THROWS_AS(to_shape_graph(parse_schema("T -> a::T | b::T\n")), PreconditionError);
    CHECK_THROWS_AS(from_shape_graph(parse_graph("graph general\nT a T [2;3]\n")), PreconditionError);
}

TEST_CASE("classification of the bug-report schemas") {
    auto c = classify(testing::data_schema("bug_reports.schema"));
    CHECK(c.cls == SchemaClass::det_shex0_minus);
    CHECK(c.diagnostics.empty());
    auto d = classify(testing::data_schema("bug_reports_split.schema"));
    CHECK(d.cls == SchemaClass::shex0);
    CHECK(d.diagnostics.size() == 2);
    CHECK(d.diagnostics[0] == "DetShEx0: type Bug1 uses label related twice");
    CHECK(to_string(d.cls) == "ShEx0");
}

TEST_CASE("classification diagnostics per class") {
    auto a = classify(parse_schema("T -> a::T | b::T\n"));
    CHECK(a.cls == SchemaClass::shex);
    auto b = classify(parse_schema("T -> a::U+\nU -> eps\n"));
    CHECK(b.cls == SchemaClass::det_shex0);
    CHECK(b.diagnostics == std::vector<std::string>{"DetShEx0Minus: type T uses + on a::U"});
    auto c = classify(parse_schema("R -> a::T\nT -> b::U?\nU -> eps\n"));
    CHECK(c.cls == SchemaClass::det_shex0);
    CHECK(c.diagnostics.size() == 1);
    auto d = classify(parse_schema("R -> a::T*\nT -> b::U?\nU -> eps\n"));
    CHECK(d.cls == SchemaClass::det_shex0_minus);
    auto e = classify(parse_schema("T -> b::U?\nU -> eps\n"));
    CHECK(e.cls == SchemaClass::det_shex0);
    auto f = classify(parse_schema("R -> a::R?\n"));
    CHECK(f.cls == SchemaClass::det_shex0);
}

TEST_CASE("star closure agrees with the path characterisation") {
    testing::Rng rng(8);
    for (int round = 0; round < 500; ++round) {
        auto g = testing::random_shape_graph(rng, 1 + round % 6, round % 10, {"a", "b"});
        CHECK(star_closed_references(g) == closed_brute(g));
    }
}
