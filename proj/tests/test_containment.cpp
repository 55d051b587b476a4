// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "shexc/canonical.hpp"
#include "shexc/containment.hpp"
#include "shexc/embedding.hpp"
#include "shexc/error.hpp"
#include "support.hpp"

using namespace shexc;
using V = ContainmentVerdict::Kind;

namespace {

SearchBudget budget(std::size_t nodes, std::uint64_t card, bool complete = false) {
    SearchBudget b;
    b.max_nodes = nodes;
    b.max_card = card;
    b.timeout_seconds = 60;
    b.assume_complete = complete;
    return b;
}

void check_witness(const ContainmentVerdict& v, const Schema& h, const Schema& k) {
    REQUIRE(v.verdict == V::not_contained);
    REQUIRE(v.witness);
    CHECK(v.witness->is_compressed());
    CHECK(validates(*v.witness, h));
    CHECK_FALSE(validates(*v.witness, k));
    auto fused = fuse_to_compressed(*v.witness, h, k);
    CHECK(fused.is_compressed());
    CHECK(validates(fused, h));
    CHECK_FALSE(validates(fused, k));
}

} // namespace

TEST_CASE("embedding-based containment on the bug-report schema") {
    auto bugs = testing::data_schema("bug_reports.schema");
    CHECK(contains_detshex0minus(bugs, bugs));
    auto looser = parse_schema(
        "Bug -> descr::Literal, reportedBy::User, reproducedBy::Employee?, related::Bug*\n"
        "User -> name::Literal, email::Literal?\nEmployee -> name::Literal, email::Literal?\nLiteral -> eps\n");
    CHECK(contains_detshex0minus(bugs, looser));
    // Deleting Employee's email edge forbids the email instead of relaxing it.
    auto no_email = parse_schema(
        "Bug -> descr::Literal, reportedBy::User, reproducedBy::Employee?, related::Bug*\n"
        "User -> name::Literal, email::Literal?\nEmployee -> name::Literal\nLiteral -> eps\n");
    CHECK_FALSE(contains_detshex0minus(bugs, no_email));
    check_witness(find_counterexample(bugs, no_email, budget(4, 1)), bugs, no_email);
    auto strict = parse_schema(
        "Bug -> descr::Literal, reportedBy::User, reproducedBy::Employee?, related::Bug*\n"
        "User -> name::Literal, email::Literal\nEmployee -> name::Literal, email::Literal\nLiteral -> eps\n");
    CHECK(contains_detshex0minus(strict, bugs));
    CHECK_FALSE(contains_detshex0minus(bugs, strict));
    // The bounded search agrees in both directions.
    CHECK(find_counterexample(strict, bugs, budget(3, 1)).verdict == V::unknown);
    auto v = find_counterexample(bugs, strict, budget(3, 1));
    check_witness(v, bugs, strict);
    CHECK_THROWS_AS(contains_detshex0minus(testing::data_schema("bug_reports_split.schema"), bugs), PreconditionError);
}

TEST_CASE("characterizing graphs") {
    auto single = characterizing_graph(parse_schema("t -> eps\n"));
    CHECK(single.node_count() == 1);
    CHECK(single.edge_count() == 0);
    auto h = testing::data_schema("charz_h.schema");
    auto g = characterizing_graph(h);
    CHECK(g.is_simple());
    CHECK(g.node_count() == 19);
    CHECK(g.edge_count() == 35);
    CHECK(isomorphic(g, testing::data_graph("charz_g.graph")));
    CHECK(validates(g, h));
    CHECK_THROWS_AS(characterizing_graph(parse_schema("T -> a::U+\nU -> eps\n")), PreconditionError);
}

TEST_CASE("characterizing graph contract on random schemas") {
    testing::Rng rng(61);
    std::vector<std::string> labels{"a", "b"};
    for (int round = 0; round < 25; ++round) {
        auto h = testing::random_minus_schema(rng, 5, labels);
        auto g = characterizing_graph(h);
        REQUIRE(g.is_simple());
        CHECK(validates(g, h));
        auto hg = to_shape_graph(h);
        for (int j = 0; j < 10; ++j) {
            auto k = testing::random_minus_schema(rng, 5, labels);
            auto kg = to_shape_graph(k);
            CHECK(embeds(g, kg).embeds == embeds(hg, kg).embeds);
        }
    }
}

TEST_CASE("kinds") {
    auto g = testing::data_graph("g0.graph");
    auto s = testing::data_schema("s0.schema");
    auto ks = kinds(g, s, s);
    REQUIRE(ks.size() == 3);
    for (const auto& k : ks) CHECK(k.h_types == k.k_types);
    CHECK(ks[1].h_types.elements() == std::vector<std::size_t>{1, 2});
    CHECK(kinds(Graph{}, s, s).empty());
}

TEST_CASE("fusing by kind") {
    auto s = parse_schema("T -> a::T*\n");
    auto tri = parse_graph("graph simple\nx a y\nx a z\ny a x\ny a z\nz a x\nz a y\n");
    auto f = fuse_to_compressed(tri, s, s);
    REQUIRE(f.node_count() == 1);
    REQUIRE(f.edge_count() == 1);
    CHECK(f.name(0) == "x");
    CHECK(f.edge(0).occur == Interval::exactly(2));
    CHECK(validates(f, s));
    // Distinct kinds everywhere: the graph comes back unchanged.
    auto g = testing::data_graph("g0.graph");
    auto s0 = testing::data_schema("s0.schema");
    auto same = fuse_to_compressed(g, s0, s0);
    CHECK(serialize_graph(same) == serialize_graph(g));
}

TEST_CASE("search finds small counter-examples") {
    auto s0 = testing::data_schema("s0.schema");
    auto k = parse_schema("t1 -> b::t2, c::t3\nt2 -> b::t2?, c::t3\nt3 -> eps\n");
    auto v = find_counterexample(s0, k, budget(4, 3));
    check_witness(v, s0, k);
    CHECK(v.witness->node_count() <= 4);
    bool has_a = false;
    for (const auto& e : v.witness->edges()) has_a = has_a || e.label == "a";
    CHECK(has_a);
    CHECK(v.stats.minimal);
    CHECK(to_string(v.verdict) == "not-contained");
}

TEST_CASE("search on equal schemas") {
    auto s0 = testing::data_schema("s0.schema");
    auto u = find_counterexample(s0, s0, budget(3, 2));
    CHECK(u.verdict == V::unknown);
    CHECK_FALSE(u.witness);
    CHECK(u.stats.levels_completed == 3);
    auto c = find_counterexample(s0, s0, budget(3, 2, true));
    CHECK(c.verdict == V::contained);
    CHECK(to_string(c.verdict) == "contained");
    CHECK_THROWS_AS(find_counterexample(s0, s0, budget(0, 2)), PreconditionError);
    CHECK_THROWS_AS(find_counterexample(s0, s0, budget(2, 0)), PreconditionError);
}

TEST_CASE("search result does not depend on the job count") {
    auto bugs = testing::data_schema("bug_reports.schema");
    auto strict = parse_schema(
        "Bug -> descr::Literal, reportedBy::User, reproducedBy::Employee?, related::Bug*\n"
        "User -> name::Literal, email::Literal\nEmployee -> name::Literal, email::Literal\nLiteral -> eps\n");
    auto one = find_counterexample(bugs, strict, budget(3, 1));
    auto b = budget(3, 1);
    b.jobs = 3;
    auto three = find_counterexample(bugs, strict, b);
    REQUIRE(one.witness);
    REQUIRE(three.witness);
    CHECK(serialize_graph(*one.witness) == serialize_graph(*three.witness));
}

TEST_CASE("embedding implies no counter-example; minus pairs agree with the search") {
    testing::Rng rng(62);
    std::vector<std::string> labels{"a", "b"};
    int found = 0;
    for (int round = 0; round < 60; ++round) {
        auto h = testing::random_minus_schema(rng, 3, labels);
        auto k = testing::random_minus_schema(rng, 3, labels);
        bool contained = contains_detshex0minus(h, k);
        auto v = find_counterexample(h, k, budget(3, 2));
        if (contained) {
            CHECK(v.verdict == V::unknown);
        } else if (v.verdict == V::not_contained) {
            ++found;
            check_witness(v, h, k);
        }
    }
    CHECK(found > 0);
    for (int round = 0; round < 60; ++round) {
        auto hg = testing::random_shape_graph(rng, 2, 3, labels);
        auto kg = testing::random_shape_graph(rng, 3, 5, labels);
        if (!embeds(hg, kg).embeds) continue;
        CHECK(find_counterexample(from_shape_graph(hg), from_shape_graph(kg), budget(3, 2)).verdict == V::unknown);
    }
}
