// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Monte Carlo harness: for each innovation copula, N simulated moving-max
// series are estimated with every (block size, scheme, c) setting; the
// boundary-corrected curves are summarised against a reference Pickands
// curve as summed squared bias, summed variance and their sum.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pickmad/block_estimators.hpp"
#include "pickmad/copula_models.hpp"
#include "pickmad/csv_io.hpp"
#include "pickmad/theory.hpp"

namespace pickmad {

struct EstimatorSetting {
  BlockKind scheme;
  double c;

  /// "D" for disjoint c = 1, otherwise "D_c" / "O_c".
  [[nodiscard]] std::string shorthand() const;
  friend bool operator==(const EstimatorSetting&, const EstimatorSetting&) = default;
};

/// Disjoint c = 1 plus sliding c in {0.25, 0.5, 1, 2, 4}.
std::vector<EstimatorSetting> standard_estimators();

struct ReferenceSource {
  ReferenceCurve reference;
  /// Where it came from, echoed in provenance (a path or "computed").
  std::string origin;
};

struct ExperimentConfig {
  std::size_t n = 1000;
  std::vector<std::size_t> m_values;  // default 1..30
  std::vector<EstimatorSetting> estimators = standard_estimators();
  std::vector<CopulaSpec> copulas = {CopulaSpec::standard_outer_power_clayton(),
                                     CopulaSpec::standard_student_t(), CopulaSpec::standard_gaussian()};
  double a = 0.25;
  double b = 0.5;
  std::size_t T = 51;
  std::size_t N = 1000;
  std::uint64_t master_seed = 20220101;
  /// Keyed by copula tag.
  std::map<std::string, ReferenceSource> references;
  unsigned workers = 0;
  /// Keep per-setting mean/variance curves in the result.
  bool keep_curves = false;

  ExperimentConfig();

  /// Throws ParameterError on invalid settings.
  void validate() const;
  [[nodiscard]] MovingMaxParams params_for(const CopulaSpec& spec) const {
    return MovingMaxParams{a, b, spec};
  }
};

struct MetricsRecord {
  std::string copula;
  BlockKind scheme;
  double c;
  std::size_t m;
  double B_sum;
  double Var_sum;
  double MSE_sum;
  /// N == 1: variance undefined, reported as 0.
  bool single_iteration;
};

struct CurveSummary {
  std::string copula;
  BlockKind scheme;
  double c;
  std::size_t m;
  std::vector<double> grid;
  std::vector<double> mean;
  std::vector<double> variance;
  std::vector<double> reference;
};

struct ExperimentResult {
  std::vector<MetricsRecord> records;
  std::vector<CurveSummary> curves;
};

/**
 * Runs the grid. Iteration i of copula k simulates one series from
 * RandomStream(master_seed).split(family_id).split(i); that series is reused
 * for every (m, scheme, c). Per-t means and unbiased variances are combined
 * in iteration order, so the output does not depend on `workers`.
 * Throws ParameterError when a reference is missing or was computed for
 * different DGP parameters or a different t-grid.
 */
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Provenance lines describing every effective setting (no worker count).
Provenance experiment_provenance(const ExperimentConfig& config);

/// Sort key (copula, scheme, c, m).
void sort_records(std::vector<MetricsRecord>& records);

/// CSV copula,scheme,c,m,B_sum,Var_sum,MSE_sum after the provenance header;
/// rows sorted by (copula, scheme, c, m).
void emit_metrics(std::ostream& out, std::vector<MetricsRecord> records,
                  const Provenance& provenance);
/// Throws InputError naming the path on I/O failure.
void emit_metrics(const std::filesystem::path& path, std::vector<MetricsRecord> records,
                  const Provenance& provenance);

/// Parses a metrics CSV written by emit_metrics.
std::vector<MetricsRecord> read_metrics_csv(const std::filesystem::path& path);

/// One CSV per curve summary: t,mean,variance,reference.
void dump_curves(const std::filesystem::path& directory, const std::vector<CurveSummary>& curves,
                 const Provenance& provenance);

}  // namespace pickmad
