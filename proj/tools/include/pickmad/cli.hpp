// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive subcommands in-process and inspect exit codes and output.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pickmad::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kParameterError = 3,
  kNumericalError = 4,
};

/// args excludes the program name. Results go to --out or `out`;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "5", "5,10,20", "1..30" or any comma-joined mix; sorted, duplicates removed.
/// Throws ParameterError on malformed text.
std::vector<std::size_t> parse_size_list(std::string_view text);

/// Comma-separated reals, order kept. Throws ParameterError.
std::vector<double> parse_real_list(std::string_view text);

/// Reads "key = value" lines ('#' and ';' comments, optional [section]
/// headers ignored) into "--key value" tokens. Throws InputError.
std::vector<std::string> config_file_args(const std::string& path);

}  // namespace pickmad::cli
