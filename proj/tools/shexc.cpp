// Copyright (c) shexc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "shexc/cli.hpp"

int main(int argc, char** argv) { return shexc::cli::run(argc, argv); }
