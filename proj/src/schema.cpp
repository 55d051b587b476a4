// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/schema.hpp"

#include <set>
#include <sstream>

#include "expr_parse.hpp"
#include "shexc/error.hpp"

namespace shexc {

TypeId Schema::add_type(const std::string& name) {
    if (type_index_.contains(name)) throw Error("duplicate type '" + name + "'");
    TypeId id = types_.size();
    type_index_.emplace(name, id);
    types_.push_back(name);
    defs_.push_back(Rbe::epsilon());
    return id;
}

std::optional<TypeId> Schema::find_type(std::string_view name) const {
    if (auto it = type_index_.find(std::string(name)); it != type_index_.end()) return it->second;
    return std::nullopt;
}

Symbol Schema::atom(const std::string& label, TypeId type) {
    if (type >= types_.size()) throw Error("atom refers to an unknown type");
    std::string key = label + "::" + types_[type];
    if (auto it = atom_index_.find(key); it != atom_index_.end()) return it->second;
    auto s = static_cast<Symbol>(atoms_.size());
    atoms_.push_back({label, type});
    atom_index_.emplace(std::move(key), s);
    return s;
}

std::optional<Symbol> Schema::find_atom(const std::string& label, TypeId type) const {
    if (type >= types_.size()) return std::nullopt;
    if (auto it = atom_index_.find(label + "::" + types_[type]); it != atom_index_.end()) return it->second;
    return std::nullopt;
}

void Schema::define(TypeId t, Rbe def) {
    if (def.alphabet_bound() > atoms_.size()) throw Error("definition uses an unknown atom");
    defs_.at(t) = std::move(def);
}

std::string Schema::atom_name(Symbol s) const {
    const auto& a = atoms_.at(s);
    return a.label + "::" + types_.at(a.type);
}

std::vector<std::string> Schema::labels() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& a : atoms_)
        if (seen.insert(a.label).second) out.push_back(a.label);
    return out;
}

std::string Schema::rule_str(TypeId t) const {
    return types_.at(t) + " -> " + defs_.at(t).str([this](Symbol s) { return atom_name(s); });
}

namespace {

struct RawRule {
    std::string head;
    std::string body;
    std::size_t line;
    std::size_t body_col;  // 1-based column of body start
};

std::string_view trim(std::string_view s, std::size_t& offset) {
    offset = 0;
    while (offset < s.size() && (s[offset] == ' ' || s[offset] == '\t')) ++offset;
    auto end = s.size();
    while (end > offset && (s[end - 1] == ' ' || s[end - 1] == '\t' || s[end - 1] == '\r')) --end;
    return s.substr(offset, end - offset);
}

} // namespace

Schema parse_schema(std::istream& in) {
    std::vector<RawRule> rules;
    std::string line;
    std::size_t lineno = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view v = line;
        if (auto h = v.find('#'); h != std::string_view::npos) v = v.substr(0, h);
        std::size_t off = 0;
        auto t = trim(v, off);
        if (t.empty()) continue;
        if (!seen_content) {
            seen_content = true;
            if (t == "schema") continue;
        }
        auto arrow = t.find("->");
        if (arrow == std::string_view::npos) throw ParseError(lineno, off + 1, "expected 'Type -> expression'");
        std::size_t hoff = 0;
        auto head = trim(t.substr(0, arrow), hoff);
        if (head.empty() || head.find_first_of(" \t") != std::string_view::npos)
            throw ParseError(lineno, off + 1, "bad rule head '" + std::string(head) + "'");
        rules.push_back({std::string(head), std::string(t.substr(arrow + 2)), lineno, off + arrow + 3});
    }
    Schema s;
    for (const auto& r : rules) {
        if (s.find_type(r.head)) throw ParseError(r.line, 1, "duplicate rule for type '" + r.head + "'");
        s.add_type(r.head);
    }
    for (const auto& r : rules) {
        Rbe def = detail::parse_expression(r.body, r.line, r.body_col, [&](std::string_view tok, std::size_t col) {
            auto sep = tok.rfind("::");
            if (sep == std::string_view::npos || sep == 0 || sep + 2 == tok.size())
                throw ParseError(r.line, col, "expected an atom 'label::Type', got '" + std::string(tok) + "'");
            auto type = s.find_type(tok.substr(sep + 2));
            if (!type)
                throw ParseError(r.line, col + sep + 2, "undefined type '" + std::string(tok.substr(sep + 2)) + "'");
            return Rbe::symbol(s.atom(std::string(tok.substr(0, sep)), *type));
        });
        s.define(*s.find_type(r.head), def);
    }
    return s;
}

Schema parse_schema(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_schema(in);
}

std::string serialize_schema(const Schema& s) {
    std::string out = "schema\n";
    for (TypeId t = 0; t < s.type_count(); ++t) out += s.rule_str(t) + "\n";
    return out;
}

Graph to_shape_graph(const Schema& s) {
    Graph g;
    for (TypeId t = 0; t < s.type_count(); ++t) g.add_node(s.type_name(t));
    for (TypeId t = 0; t < s.type_count(); ++t) {
        auto atoms = to_rbe0(s.def(t));
        if (!atoms) throw PreconditionError("type " + s.type_name(t) + " is not defined by an RBE0 expression");
        for (const auto& a : *atoms) {
            const auto& at = s.atoms()[a.symbol];
            g.add_edge(t, at.label, at.type, a.occur);
        }
    }
    return g;
}

Schema from_shape_graph(const Graph& g) {
    if (!g.is_shape()) throw PreconditionError("not a shape graph: some interval is not basic");
    Schema s;
    for (NodeId n = 0; n < g.node_count(); ++n) s.add_type(g.name(n));
    for (NodeId n = 0; n < g.node_count(); ++n) {
        Rbe0 atoms;
        for (auto e : g.out(n)) {
            const auto& ed = g.edge(e);
            atoms.push_back({s.atom(ed.label, ed.target), ed.occur});
        }
        s.define(n, from_rbe0(atoms));
    }
    return s;
}

} // namespace shexc
