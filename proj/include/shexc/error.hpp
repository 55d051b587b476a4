// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shexc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    std::size_t line;
    std::size_t column;
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line(line), column(column) {}
};

// Input is well-formed but violates an operation's precondition.
struct PreconditionError : Error {
    using Error::Error;
};

// A configured work or size cap was hit; the answer is unknown, not false.
struct BudgetExceeded : Error {
    using Error::Error;
};

} // namespace shexc
