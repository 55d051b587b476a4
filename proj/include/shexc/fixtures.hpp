// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shexc/graph.hpp"
#include "shexc/rbe.hpp"
#include "shexc/schema.hpp"

namespace shexc {

struct Literal {
    std::size_t var;  // 0-based
    bool positive;
    friend bool operator==(const Literal&, const Literal&) = default;
};

// Conjunction of clauses (CNF) or disjunction of terms (DNF), by context.
struct CnfFormula {
    std::size_t vars = 0;
    std::vector<std::vector<Literal>> clauses;
    std::size_t k = 0;  // set by normalize: positive and negative occurrences per variable
};

struct DnfFormula {
    std::size_t vars = 0;
    std::vector<std::vector<Literal>> terms;
};

// "1 -2; 2 3": signed 1-based variables, groups separated by ';'.
CnfFormula parse_cnf(std::string_view text);
DnfFormula parse_dnf(std::string_view text);

// Pads every variable to exactly k positive and k negative occurrences with
// one tautological clause per variable.
CnfFormula normalize(const CnfFormula& phi);
bool is_normalized(const CnfFormula& phi);
bool brute_force_sat(const CnfFormula& phi);
bool brute_force_tautology(const DnfFormula& phi);

struct GraphPair {
    Graph h, k;
};
struct SchemaPair {
    Schema h, k;
};

// Requires a normalized formula; phi satisfiable iff h embeds in k.
GraphPair sat_embedding_instance(const CnfFormula& phi);
// phi a tautology iff h is contained in k.
SchemaPair dnf_containment_instance(const DnfFormula& phi);
// n >= 1; minimal counter-examples grow exponentially with n.
SchemaPair exponential_family(std::size_t n);
// L(e0) ⊆ L(e1|...|en) iff h ⊆ k. Symbols of the expressions name labels.
SchemaPair union_containment_instance(const Rbe& e0, const std::vector<Rbe>& es,
                                      const std::vector<std::string>& alphabet);

} // namespace shexc
