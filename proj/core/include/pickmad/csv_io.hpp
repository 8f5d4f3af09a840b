// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// CSV interchange: bivariate series (x1,x2), Pickands curves (t,value) and
// reference curves (t,value,std_error). Every file starts with "# key=value"
// provenance lines.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pickmad/copula_models.hpp"
#include "pickmad/dgp.hpp"
#include "pickmad/madogram.hpp"
#include "pickmad/theory.hpp"

namespace pickmad {

using Provenance = std::vector<std::pair<std::string, std::string>>;
using Metadata = std::map<std::string, std::string>;

/// Commit hash the library was built from ("unknown" outside git).
std::string build_id();

void write_provenance(std::ostream& out, const Provenance& provenance);

/**
 * Reads a two-column numeric CSV. Accepts '#' comment lines, one optional
 * header row, blank lines and CRLF endings. Throws InputError naming the
 * path, row and column on unreadable files, wrong column counts, and
 * non-numeric or non-finite cells.
 */
BivariateSeries read_series_csv(const std::filesystem::path& path);
BivariateSeries read_series_csv(std::istream& in, const std::string& source_name);

void write_series_csv(std::ostream& out, const BivariateSeries& series,
                      const Provenance& provenance = {});

/// Curve metadata lines (# c=, # m=, # scheme=, # margins=, # corrected=,
/// # clamped=) followed by t,value[,std_error] rows.
void write_curve_csv(std::ostream& out, const PickandsCurve& curve,
                     const Provenance& provenance = {});

struct CurveFile {
  PickandsCurve curve;
  Metadata metadata;
};

CurveFile read_curve_csv(const std::filesystem::path& path);
CurveFile read_curve_csv(std::istream& in, const std::string& source_name);

/// Copula family and parameters as metadata entries (copula=, theta=, ...).
Provenance copula_metadata(const CopulaSpec& spec);
CopulaSpec copula_from_metadata(const Metadata& metadata);

/// Reference curve with its DGP parameters and simulation settings.
void write_reference_csv(std::ostream& out, const ReferenceCurve& reference);
ReferenceCurve read_reference_csv(const std::filesystem::path& path);

}  // namespace pickmad
