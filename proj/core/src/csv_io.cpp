// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include "pickmad/csv_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <variant>

#include "pickmad/errors.hpp"
#include "pickmad/format.hpp"

#ifndef PICKMAD_BUILD_ID
#define PICKMAD_BUILD_ID "unknown"
#endif

namespace pickmad {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& source, std::size_t row, const std::string& what) {
  std::ostringstream msg;
  msg << source << ": row " << row << ": " << what;
  throw InputError(msg.str());
}

// Parses "# key=value" into the metadata map; other comments are ignored.
void parse_metadata_line(std::string_view line, Metadata& metadata) {
  line.remove_prefix(1);
  line = trim(line);
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) return;
  metadata[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
}

struct NumericTable {
  std::vector<std::vector<double>> rows;
  Metadata metadata;
};

// Generic reader: comments, optional header, fixed column count, finite values.
NumericTable read_numeric_table(std::istream& in, const std::string& source,
                                std::size_t min_columns, std::size_t max_columns) {
  NumericTable table;
  std::string raw;
  std::size_t row = 0;
  bool seen_data_or_header = false;
  while (std::getline(in, raw)) {
    ++row;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      parse_metadata_line(line, table.metadata);
      continue;
    }
    const auto cells = split_commas(line);
    if (cells.size() < min_columns || cells.size() > max_columns) {
      std::ostringstream what;
      what << "expected " << min_columns;
      if (max_columns != min_columns) what << "-" << max_columns;
      what << " columns, found " << cells.size();
      fail(source, row, what.str());
    }
    std::vector<double> values;
    values.reserve(cells.size());
    bool numeric = true;
    for (std::size_t col = 0; col < cells.size(); ++col) {
      double v = 0.0;
      if (!parse_double(cells[col], v)) {
        numeric = false;
        if (seen_data_or_header) {
          fail(source, row, "column " + std::to_string(col + 1) + ": cannot parse '" +
                                std::string(trim(cells[col])) + "' as a number");
        }
        break;
      }
      if (!std::isfinite(v)) {
        fail(source, row, "column " + std::to_string(col + 1) + ": non-finite value '" +
                              std::string(trim(cells[col])) + "'");
      }
      values.push_back(v);
    }
    if (!numeric) {
      // First non-comment row may be a header.
      seen_data_or_header = true;
      continue;
    }
    seen_data_or_header = true;
    table.rows.push_back(std::move(values));
  }
  return table;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
  return in;
}

const std::string& require_key(const Metadata& metadata, const std::string& key,
                               const std::string& source) {
  const auto it = metadata.find(key);
  if (it == metadata.end()) throw InputError(source + ": missing metadata '# " + key + "='");
  return it->second;
}

double require_number(const Metadata& metadata, const std::string& key, const std::string& source) {
  double v = 0.0;
  const auto& text = require_key(metadata, key, source);
  if (!parse_double(text, v)) throw InputError(source + ": metadata '" + key + "' is not numeric");
  return v;
}

std::uint64_t require_unsigned(const Metadata& metadata, const std::string& key,
                               const std::string& source) {
  const auto& text = require_key(metadata, key, source);
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InputError(source + ": metadata '" + key + "' is not an unsigned integer");
  }
  return v;
}

}  // namespace

std::string build_id() { return PICKMAD_BUILD_ID; }

void write_provenance(std::ostream& out, const Provenance& provenance) {
  for (const auto& [key, value] : provenance) out << "# " << key << "=" << value << "\n";
}

BivariateSeries read_series_csv(std::istream& in, const std::string& source_name) {
  auto table = read_numeric_table(in, source_name, 2, 2);
  if (table.rows.empty()) throw InputError(source_name + ": no data rows");
  std::vector<BivariatePoint> points;
  points.reserve(table.rows.size());
  for (const auto& r : table.rows) points.push_back({r[0], r[1]});
  return BivariateSeries(std::move(points));
}

BivariateSeries read_series_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_series_csv(in, path.string());
}

void write_series_csv(std::ostream& out, const BivariateSeries& series,
                      const Provenance& provenance) {
  write_provenance(out, provenance);
  out << "x1,x2\n";
  for (const auto& p : series.observations()) {
    out << format_double(p.x1) << "," << format_double(p.x2) << "\n";
  }
}

void write_curve_csv(std::ostream& out, const PickandsCurve& curve, const Provenance& provenance) {
  write_provenance(out, provenance);
  write_provenance(out, {{"c", format_double(curve.c)},
                         {"m", std::to_string(curve.scheme.block_size())},
                         {"scheme", std::string(to_string(curve.scheme.kind()))},
                         {"margins", std::string(to_string(curve.margin_mode))},
                         {"corrected", curve.corrected ? "true" : "false"},
                         {"clamped", curve.clamped ? "true" : "false"}});
  const bool with_se = !curve.std_errors.empty();
  out << (with_se ? "t,value,std_error\n" : "t,value\n");
  for (std::size_t k = 0; k < curve.grid.size(); ++k) {
    out << format_double(curve.grid[k]) << "," << format_double(curve.values[k]);
    if (with_se) out << "," << format_double(curve.std_errors[k]);
    out << "\n";
  }
}

CurveFile read_curve_csv(std::istream& in, const std::string& source_name) {
  auto table = read_numeric_table(in, source_name, 2, 3);
  if (table.rows.empty()) throw InputError(source_name + ": curve has no rows");
  CurveFile file;
  file.metadata = table.metadata;
  auto& curve = file.curve;
  for (const auto& r : table.rows) {
    curve.grid.push_back(r[0]);
    curve.values.push_back(r[1]);
    if (r.size() == 3) curve.std_errors.push_back(r[2]);
  }
  if (!curve.std_errors.empty() && curve.std_errors.size() != curve.grid.size()) {
    throw InputError(source_name + ": std_error column present on only some rows");
  }
  try {
    validate_grid(curve.grid);
  } catch (const ParameterError& err) {
    throw InputError(source_name + ": " + err.what());
  }
  const auto& md = file.metadata;
  if (md.count("c")) curve.c = require_number(md, "c", source_name);
  if (md.count("m") && md.count("scheme")) {
    curve.scheme = BlockScheme(parse_block_kind(md.at("scheme")),
                               require_unsigned(md, "m", source_name));
  }
  if (md.count("margins")) {
    curve.margin_mode = md.at("margins") == "oracle" ? MarginMode::OracleMargin : MarginMode::RankBased;
  }
  curve.corrected = md.count("corrected") && md.at("corrected") == "true";
  curve.clamped = md.count("clamped") && md.at("clamped") == "true";
  return file;
}

CurveFile read_curve_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_curve_csv(in, path.string());
}

Provenance copula_metadata(const CopulaSpec& spec) {
  Provenance out{{"copula", spec.tag()}};
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, copula::OuterPowerClayton>) {
          out.emplace_back("theta", format_double(p.theta));
          out.emplace_back("beta", format_double(p.beta));
        } else if constexpr (std::is_same_v<T, copula::StudentT>) {
          out.emplace_back("nu", format_double(p.dof));
          out.emplace_back("rho", format_double(p.rho));
        } else if constexpr (std::is_same_v<T, copula::Gaussian>) {
          out.emplace_back("rho", format_double(p.rho));
        } else if constexpr (std::is_same_v<T, copula::Logistic>) {
          out.emplace_back("beta", format_double(p.beta));
        }
      },
      spec.variant());
  return out;
}

CopulaSpec copula_from_metadata(const Metadata& metadata) {
  const std::string source = "metadata";
  const auto& tag = require_key(metadata, "copula", source);
  if (tag == "opclayton") {
    return CopulaSpec::outer_power_clayton(require_number(metadata, "theta", source),
                                           require_number(metadata, "beta", source));
  }
  if (tag == "t4") {
    return CopulaSpec::student_t(require_number(metadata, "nu", source),
                                 require_number(metadata, "rho", source));
  }
  if (tag == "gaussian") return CopulaSpec::gaussian(require_number(metadata, "rho", source));
  if (tag == "logistic") return CopulaSpec::logistic(require_number(metadata, "beta", source));
  return CopulaSpec::from_tag(tag);
}

void write_reference_csv(std::ostream& out, const ReferenceCurve& reference) {
  Provenance header{{"kind", "reference"}, {"build", build_id()}};
  for (auto& kv : copula_metadata(reference.params.innovation)) header.push_back(kv);
  header.emplace_back("a", format_double(reference.params.a));
  header.emplace_back("b", format_double(reference.params.b));
  header.emplace_back("big_m", std::to_string(reference.big_m));
  header.emplace_back("reps", std::to_string(reference.reps));
  header.emplace_back("seed", std::to_string(reference.seed));
  write_curve_csv(out, reference.curve, header);
}

ReferenceCurve read_reference_csv(const std::filesystem::path& path) {
  auto file = read_curve_csv(path);
  const std::string source = path.string();
  const auto& md = file.metadata;
  if (!md.count("kind") || md.at("kind") != "reference") {
    throw InputError(source + ": not a reference curve (missing '# kind=reference')");
  }
  ReferenceCurve ref;
  try {
    ref.params = MovingMaxParams{require_number(md, "a", source), require_number(md, "b", source),
                                 copula_from_metadata(md)};
    ref.params.validate();
  } catch (const ParameterError& err) {
    throw InputError(source + ": " + err.what());
  }
  ref.big_m = require_unsigned(md, "big_m", source);
  ref.reps = require_unsigned(md, "reps", source);
  ref.seed = require_unsigned(md, "seed", source);
  ref.curve = std::move(file.curve);
  return ref;
}

}  // namespace pickmad
