// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

#include "shexc/rbe.hpp"

namespace shexc::detail {

// Builds the Rbe for one atom token; `column` is 1-based within the line.
using AtomFn = std::function<Rbe(std::string_view token, std::size_t column)>;

// Parses `text` (one logical line) with the grammar shared by the schema
// format and standalone expressions:
//   disj := inter ('|' inter)*      inter := conc ('&' conc)*
//   conc := post (',' post)*        post  := prim ('?' | '*' | '+' | '^' occur)*
//   prim := '(' disj ')' | 'eps' | 'empty' | atom
// Errors are ParseError at (line, column0 + offset).
Rbe parse_expression(std::string_view text, std::size_t line, std::size_t column0, const AtomFn& atom);

} // namespace shexc::detail
