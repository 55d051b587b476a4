// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <vector>

#include "shexc/error.hpp"
#include "shexc/interval.hpp"

using namespace shexc;

TEST_CASE("named intervals and basic") {
    CHECK(Interval::one().str() == "1");
    CHECK(Interval::opt().str() == "?");
    CHECK(Interval::plus().str() == "+");
    CHECK(Interval::star().str() == "*");
    CHECK(Interval(2, 5).str() == "[2;5]");
    CHECK(Interval(3, Interval::inf).str() == "[3;inf]");
    CHECK(Interval::one().basic());
    CHECK(Interval::star().basic());
    CHECK_FALSE(Interval::zero().basic());
    CHECK_FALSE(Interval(0, 2).basic());
    CHECK_FALSE(Interval(2, Interval::inf).basic());
}

TEST_CASE("constructor rejects empty or infinite-lower intervals") {
    CHECK_THROWS_AS(Interval(3, 2), Error);
    CHECK_THROWS_AS(Interval(Interval::inf, Interval::inf), Error);
}

TEST_CASE("parse round trip") {
    for (auto t : {"1", "?", "+", "*", "[0;0]", "[2;7]", "[4;inf]"}) CHECK(parse_interval(t).str() == t);
    CHECK(parse_interval("3") == Interval::exactly(3));
    CHECK(parse_interval("[1;1]") == Interval::one());
    CHECK(parse_interval("[0;∞]") == Interval::star());
    for (auto bad : {"", "[", "[1]", "[2;1]", "[a;3]", "x", "-1", "[inf;inf]"}) CHECK_THROWS_AS(parse_interval(bad), Error);
}

TEST_CASE("arithmetic") {
    CHECK(interval_add(Interval::one(), Interval::opt()) == Interval(1, 2));
    CHECK(interval_add(Interval::plus(), Interval::opt()) == Interval::plus());
    std::vector<Interval> xs{Interval::one(), Interval::one(), Interval::star()};
    CHECK(interval_sum(xs) == Interval(2, Interval::inf));
    CHECK(interval_sum(std::vector<Interval>{}) == Interval::zero());
    CHECK(add_bounds(Interval::inf, 4) == Interval::inf);
    CHECK(mul_bounds(0, Interval::inf) == 0);
    CHECK(mul_bounds(3, 4) == 12);
    CHECK_THROWS_AS(add_bounds(Interval::inf - 1, 5), Error);
    CHECK_THROWS_AS(mul_bounds(Interval::inf / 2, 3), Error);
}

TEST_CASE("subset and membership") {
    CHECK(interval_subset(Interval::one(), Interval::plus()));
    CHECK(interval_subset(Interval::opt(), Interval::star()));
    CHECK_FALSE(interval_subset(Interval::star(), Interval::plus()));
    CHECK_FALSE(interval_subset(Interval(0, 2), Interval::opt()));
    CHECK(Interval(2, 4).contains(3));
    CHECK_FALSE(Interval(2, 4).contains(5));
    CHECK(Interval::star().contains(1'000'000));
}
