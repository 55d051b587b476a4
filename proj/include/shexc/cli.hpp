// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shexc::cli {

enum Exit : int { holds = 0, fails = 1, unknown = 2, usage = 3 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace shexc::cli
