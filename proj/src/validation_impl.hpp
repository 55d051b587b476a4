// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "shexc/validation.hpp"

namespace shexc::detail {

inline constexpr std::uint32_t no_label = 0xffffffffu;

struct CompiledSchema {
    const Schema* schema = nullptr;
    std::unordered_map<std::string, std::uint32_t> label_id;
    std::vector<std::uint32_t> atom_label;                 // symbol -> label
    std::vector<std::vector<Symbol>> atoms_by_label;       // label -> symbols
    std::vector<std::optional<Rbe0>> rbe0;                 // type -> atoms, if RBE₀
    std::vector<std::vector<SymbolRange>> label_ranges;    // type -> label -> range

    [[nodiscard]] std::uint32_t label(const std::string& l) const {
        auto it = label_id.find(l);
        return it == label_id.end() ? no_label : it->second;
    }
};

CompiledSchema compile(const Schema& s);

// One out-edge of a node: label id, target node, cardinality.
struct CEdge {
    std::uint32_t label;
    NodeId target;
    std::uint64_t count;
};

std::vector<CEdge> compile_out(const Graph& g, const CompiledSchema& cs, NodeId n);

// Does a node with these out-edges satisfy type ty under typing t?
bool satisfies(const CompiledSchema& cs, const std::vector<CEdge>& out, const Typing& t, TypeId ty,
               const ValidationOptions& opts);

} // namespace shexc::detail
