// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "shexc/error.hpp"
#include "shexc/routing.hpp"
#include "support.hpp"

using namespace shexc;

namespace {

RoutingInstance random_instance(testing::Rng& rng, bool basic, std::size_t max_side) {
    auto iv = [&] { return basic ? testing::random_basic(rng) : testing::random_interval(rng); };
    std::vector<Interval> src(testing::pick(rng, 0, max_side)), snk(testing::pick(rng, 0, max_side));
    for (auto& x : src) x = iv();
    for (auto& x : snk) x = iv();
    RoutingInstance inst(src, snk);
    for (std::size_t v = 0; v < src.size(); ++v)
        for (std::size_t u = 0; u < snk.size(); ++u)
            if (testing::pick(rng, 0, 2)) inst.allow(v, u);
    return inst;
}

} // namespace

TEST_CASE("small hand instances") {
    // Two mandatory sources, one sink that takes at most one.
    RoutingInstance a({Interval::one(), Interval::one()}, {Interval::opt(), Interval::star()});
    a.allow(0, 0);
    a.allow(1, 0);
    CHECK_FALSE(witness_exists_basic(a));
    a.allow(1, 1);
    auto r = witness_exists_basic(a);
    REQUIRE(r);
    CHECK(*r == Routing{0, 1});
    // A mandatory sink with nothing allowed into it.
    RoutingInstance b({Interval::star()}, {Interval::plus(), Interval::one()});
    b.allow(0, 0);
    CHECK_FALSE(find_routing(b));
    // No sources: all sinks must accept zero.
    CHECK(find_routing(RoutingInstance({}, {Interval::star(), Interval::opt()})));
    CHECK_FALSE(find_routing(RoutingInstance({}, {Interval::one()})));
    CHECK(a.basic());
    CHECK_FALSE(RoutingInstance({Interval(2, 3)}, {}).basic());
}

TEST_CASE("basic flow agrees with the brute-force router") {
    testing::Rng rng(21);
    for (int round = 0; round < 20'000; ++round) {
        auto inst = random_instance(rng, true, 4);
        auto r = witness_exists_basic(inst);
        REQUIRE(r.has_value() == testing::routing_exists_brute(inst));
        if (r) CHECK(testing::routing_ok(inst, *r));
    }
}

TEST_CASE("general backtracking agrees with the brute-force router") {
    testing::Rng rng(22);
    for (int round = 0; round < 20'000; ++round) {
        auto inst = random_instance(rng, false, 4);
        auto r = witness_exists_general(inst);
        REQUIRE(r.has_value() == testing::routing_exists_brute(inst));
        if (r) CHECK(testing::routing_ok(inst, *r));
    }
}

TEST_CASE("routing_valid agrees with the oracle check") {
    testing::Rng rng(23);
    for (int round = 0; round < 5'000; ++round) {
        auto inst = random_instance(rng, false, 4);
        if (inst.sinks.empty()) continue;
        Routing r(inst.sources.size());
        for (auto& x : r) x = testing::pick(rng, 0, inst.sinks.size() - 1);
        CHECK(routing_valid(inst, r) == testing::routing_ok(inst, r));
    }
}

TEST_CASE("node budget") {
    std::vector<Interval> src(14, Interval(1, 2)), snk(14, Interval(3, 3));
    RoutingInstance inst(src, snk);
    for (std::size_t v = 0; v < src.size(); ++v)
        for (std::size_t u = 0; u < snk.size(); ++u) inst.allow(v, u);
    RoutingLimits tiny;
    tiny.node_budget = 50;
    CHECK_THROWS_AS(witness_exists_general(inst, tiny), BudgetExceeded);
}
