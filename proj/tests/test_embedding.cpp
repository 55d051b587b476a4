// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "shexc/embedding.hpp"
#include "support.hpp"

using namespace shexc;

namespace {

std::set<std::pair<NodeId, NodeId>> as_set(const SimulationRelation& r) {
    auto p = r.pairs();
    return {p.begin(), p.end()};
}

} // namespace

TEST_CASE("the small example embeds") {
    auto g = testing::data_graph("g0.graph");
    auto h = testing::data_graph("h0.graph");
    SimulationStats stats;
    auto r = max_simulation(g, h, {}, &stats);
    CHECK(r.total());
    auto dump = embedding_dump(g, h, r);
    CHECK(dump.rfind("n0\tt0\nn1\tt1\nn1\tt2\nn2\tt3\n\n", 0) == 0);
    CHECK(dump.find("  edge(n0,a,n1) => edge(t0,a,t1)\n") != std::string::npos);
    CHECK(verify_simulation(g, h, r));
    for (auto [n, m] : r.pairs()) CHECK(verify_witness(g, h, r, n, m, r.witnesses.at({n, m})));
    REQUIRE(!stats.sizes.empty());
    CHECK(stats.sizes.front() == 12);
    CHECK(stats.sizes.back() == 4);
    CHECK(std::is_sorted(stats.sizes.rbegin(), stats.sizes.rend()));
}

TEST_CASE("star-star graph does not embed into its split version") {
    auto g = testing::data_graph("star_star_g.graph");
    auto h = testing::data_graph("star_star_h.graph");
    CHECK_FALSE(embeds(g, h).embeds);
    CHECK(embeds(h, g).embeds);
}

TEST_CASE("a tampered witness is rejected") {
    auto g = testing::data_graph("g0.graph");
    auto h = testing::data_graph("h0.graph");
    auto r = max_simulation(g, h);
    auto lambda = r.witnesses.at({1, 1});
    // n1 -b-> n1 and n1 -c-> n2 swapped onto each other's edges.
    std::swap(lambda[0], lambda[1]);
    CHECK_FALSE(verify_witness(g, h, r, 1, 1, lambda));
    auto smaller = r;
    smaller.set(2, 3, false);
    CHECK_FALSE(verify_simulation(g, h, smaller));
}

TEST_CASE("maximal simulation matches the fixpoint oracle") {
    testing::Rng rng(51);
    std::vector<std::string> labels{"a", "b"};
    for (int round = 0; round < 400; ++round) {
        auto g = testing::random_shape_graph(rng, 1 + round % 4, round % 7, labels);
        auto h = testing::random_shape_graph(rng, 1 + round % 5, round % 8, labels);
        auto r = max_simulation(g, h);
        CHECK(as_set(r) == testing::simulation_brute(g, h));
        CHECK(verify_simulation(g, h, r));
        for (auto [n, m] : r.pairs()) CHECK(verify_witness(g, h, r, n, m, r.witnesses.at({n, m})));
        SimulationOptions par;
        par.jobs = 2;
        CHECK(as_set(max_simulation(g, h, par)) == as_set(r));
    }
}

TEST_CASE("embedding is reflexive and transitive on samples") {
    testing::Rng rng(52);
    std::vector<std::string> labels{"a", "b"};
    for (int round = 0; round < 150; ++round) {
        auto a = testing::random_shape_graph(rng, 3, 5, labels);
        auto b = testing::random_shape_graph(rng, 3, 5, labels);
        auto c = testing::random_shape_graph(rng, 3, 5, labels);
        CHECK(embeds(a, a).embeds);
        if (embeds(a, b).embeds && embeds(b, c).embeds) CHECK(embeds(a, c).embeds);
    }
}
