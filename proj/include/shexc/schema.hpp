// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shexc/graph.hpp"
#include "shexc/rbe.hpp"

namespace shexc {

using TypeId = std::size_t;

// Atom a::t of a schema; Rbe symbols index into Schema::atoms().
struct SchemaAtom {
    std::string label;
    TypeId type;
    friend bool operator==(const SchemaAtom&, const SchemaAtom&) = default;
};

class Schema {
  public:
    Schema() = default;

    TypeId add_type(const std::string& name);
    [[nodiscard]] std::optional<TypeId> find_type(std::string_view name) const;
    Symbol atom(const std::string& label, TypeId type);
    [[nodiscard]] std::optional<Symbol> find_atom(const std::string& label, TypeId type) const;
    void define(TypeId t, Rbe def);

    [[nodiscard]] std::size_t type_count() const { return types_.size(); }
    [[nodiscard]] const std::string& type_name(TypeId t) const { return types_.at(t); }
    [[nodiscard]] const std::vector<std::string>& type_names() const { return types_; }
    [[nodiscard]] const Rbe& def(TypeId t) const { return defs_.at(t); }
    [[nodiscard]] const std::vector<SchemaAtom>& atoms() const { return atoms_; }
    [[nodiscard]] std::string atom_name(Symbol s) const;
    [[nodiscard]] std::vector<std::string> labels() const;  // first-use order

    [[nodiscard]] std::string rule_str(TypeId t) const;

  private:
    std::vector<std::string> types_;
    std::unordered_map<std::string, TypeId> type_index_;
    std::vector<Rbe> defs_;
    std::vector<SchemaAtom> atoms_;
    std::unordered_map<std::string, Symbol> atom_index_;
};

Schema parse_schema(std::istream& in);
Schema parse_schema(std::string_view text);
std::string serialize_schema(const Schema& s);

// Throws PreconditionError naming the first type whose definition is not RBE₀.
Graph to_shape_graph(const Schema& s);
Schema from_shape_graph(const Graph& g);

enum class SchemaClass { shex, shex0, det_shex0, det_shex0_minus };
std::string_view to_string(SchemaClass c);

struct Classification {
    SchemaClass cls;
    // One entry per violated criterion of a stricter class, e.g.
    // "DetShEx0: type Bug uses label related twice".
    std::vector<std::string> diagnostics;
};

Classification classify(const Schema& s);

// Per-reference *-closure (edge ids of to_shape_graph(s)); exposed for tests.
std::vector<bool> star_closed_references(const Graph& shape);

} // namespace shexc
