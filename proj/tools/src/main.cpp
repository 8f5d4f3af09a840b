// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>
#include <vector>

#include "pickmad/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv + 1, argv + argc);
  const int code = pickmad::cli::run(args, std::cout, std::cerr);
  std::cout.flush();
  return code;
}
