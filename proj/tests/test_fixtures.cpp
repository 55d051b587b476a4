// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "shexc/containment.hpp"
#include "shexc/embedding.hpp"
#include "shexc/error.hpp"
#include "shexc/fixtures.hpp"
#include "support.hpp"

using namespace shexc;
using V = ContainmentVerdict::Kind;

namespace {

CnfFormula random_cnf(testing::Rng& rng, std::size_t vars) {
    CnfFormula phi;
    phi.vars = vars;
    std::size_t clauses = testing::pick(rng, 1, 3);
    for (std::size_t c = 0; c < clauses; ++c) {
        std::vector<Literal> cl;
        std::size_t width = testing::pick(rng, 1, 2);
        for (std::size_t i = 0; i < width; ++i) cl.push_back({testing::pick(rng, 0, vars - 1), testing::pick(rng, 0, 1) == 1});
        phi.clauses.push_back(cl);
    }
    return phi;
}

SearchBudget budget(std::size_t nodes, std::uint64_t card, bool complete) {
    SearchBudget b;
    b.max_nodes = nodes;
    b.max_card = card;
    b.assume_complete = complete;
    b.timeout_seconds = 120;
    return b;
}

} // namespace

TEST_CASE("formula parsing") {
    auto phi = parse_cnf("1 -2; 2 3");
    CHECK(phi.vars == 3);
    REQUIRE(phi.clauses.size() == 2);
    CHECK(phi.clauses[0] == std::vector<Literal>{{0, true}, {1, false}});
    auto d = parse_dnf("-1");
    CHECK(d.vars == 1);
    CHECK(d.terms[0][0] == Literal{0, false});
    CHECK_THROWS_AS(parse_cnf("1 x"), ParseError);
    CHECK_THROWS_AS(parse_cnf("0"), ParseError);
}

TEST_CASE("normalisation pads occurrences and keeps satisfiability") {
    testing::Rng rng(71);
    for (int round = 0; round < 300; ++round) {
        auto phi = random_cnf(rng, 1 + round % 3);
        auto norm = normalize(phi);
        CHECK(is_normalized(norm));
        CHECK_FALSE(is_normalized(phi));
        CHECK(brute_force_sat(norm) == brute_force_sat(phi));
        for (std::size_t i = 0; i < norm.vars; ++i) {
            std::size_t pos = 0, neg = 0;
            for (const auto& c : norm.clauses)
                for (const auto& l : c)
                    if (l.var == i) ++(l.positive ? pos : neg);
            CHECK(pos == norm.k);
            CHECK(neg == norm.k);
        }
    }
}

TEST_CASE("SAT instances") {
    auto unsat = sat_embedding_instance(normalize(parse_cnf("1; -1")));
    CHECK_FALSE(embeds(unsat.h, unsat.k).embeds);
    auto sat = sat_embedding_instance(normalize(parse_cnf("1 2; -1 -2")));
    CHECK(embeds(sat.h, sat.k).embeds);
    CHECK(sat.h.find("r1"));
    CHECK(sat.k.find("r2"));
    CHECK(sat.k.kind() == GraphKind::general);
    CHECK_THROWS_AS(sat_embedding_instance(parse_cnf("1")), PreconditionError);
}

TEST_CASE("SAT instances agree with brute force on random formulas") {
    testing::Rng rng(72);
    for (int round = 0; round < 60; ++round) {
        auto phi = normalize(random_cnf(rng, 1 + round % 3));
        auto inst = sat_embedding_instance(phi);
        CHECK(embeds(inst.h, inst.k).embeds == brute_force_sat(phi));
    }
}

TEST_CASE("DNF instances follow the pattern of the worked example") {
    auto p = dnf_containment_instance(parse_dnf("1 -2; 2 -3"));
    CHECK(p.h.type_names() == std::vector<std::string>{"r", "v", "o"});
    for (auto name : {"o", "v", "v0", "v1", "r0_1", "r0_3", "r1_2", "rd_1", "rd_2", "vd_2_3"}) CHECK(p.k.find_type(name));
    CHECK(p.k.type_count() == 4 + 3 + 3 + 2 * (1 + 3));
    CHECK(classify(p.h).cls == SchemaClass::det_shex0);
    CHECK(classify(p.k).cls == SchemaClass::det_shex0);
}

TEST_CASE("DNF tautology decides containment at small scale") {
    auto taut = dnf_containment_instance(parse_dnf("1; -1"));
    CHECK(brute_force_tautology(parse_dnf("1; -1")));
    CHECK(find_counterexample(taut.h, taut.k, budget(8, 1, true)).verdict == V::contained);
    auto not_taut = dnf_containment_instance(parse_dnf("1"));
    auto v = find_counterexample(not_taut.h, not_taut.k, budget(8, 1, false));
    REQUIRE(v.verdict == V::not_contained);
    bool has_f = false;
    for (const auto& e : v.witness->edges()) has_f = has_f || e.label == "f";
    CHECK(has_f);
}

TEST_CASE("exponential family") {
    CHECK_THROWS_AS(exponential_family(0), PreconditionError);
    std::vector<std::size_t> sizes;
    for (std::size_t n = 1; n <= 4; ++n) {
        auto p = exponential_family(n);
        CHECK(classify(p.h).cls != SchemaClass::shex);
        CHECK(classify(p.k).cls != SchemaClass::shex);
        sizes.push_back(p.h.type_count() + p.k.type_count());
        CHECK(sizes.back() <= 12 * (n + 1) * (n + 1));
    }
    CHECK(std::is_sorted(sizes.begin(), sizes.end()));
    auto one = exponential_family(1);
    auto v = find_counterexample(one.h, one.k, budget(5, 1, false));
    REQUIRE(v.verdict == V::not_contained);
    CHECK(v.witness->node_count() == 3);
}

TEST_CASE("union instances") {
    std::vector<std::string> ab;
    auto a = parse_rbe("a", ab);
    auto p = union_containment_instance(a, {a}, ab);
    CHECK(find_counterexample(p.h, p.k, budget(3, 3, true)).verdict == V::contained);
    auto star = parse_rbe("a*", ab);
    auto q = union_containment_instance(star, {Rbe::epsilon(), a}, ab);
    auto v = find_counterexample(q.h, q.k, budget(3, 3, false));
    REQUIRE(v.verdict == V::not_contained);
    std::uint64_t a_edges = 0;
    for (const auto& e : v.witness->edges())
        if (e.label == "a") a_edges += e.occur.min();
    CHECK(a_edges == 2);
    auto b = parse_rbe("b", ab);
    auto r = union_containment_instance(Rbe::disj(a, b), {a, b}, ab);
    CHECK(find_counterexample(r.h, r.k, budget(3, 3, true)).verdict == V::contained);
    // The fresh label avoids alphabet clashes.
    std::vector<std::string> zab{"z"};
    auto zq = union_containment_instance(Rbe::symbol(0), {Rbe::symbol(0)}, zab);
    CHECK(zq.h.find_atom("z_", 1));
    CHECK_THROWS_AS(union_containment_instance(a, {}, ab), PreconditionError);
}
