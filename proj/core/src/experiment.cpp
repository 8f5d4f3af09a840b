// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include "pickmad/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

#include "pickmad/dgp.hpp"
#include "pickmad/errors.hpp"
#include "pickmad/format.hpp"
#include "pickmad/madogram.hpp"
#include "pickmad/numerics.hpp"

namespace pickmad {

namespace {

constexpr std::size_t kIterationBatch = 64;
constexpr double kGridMatchTolerance = 1e-12;

// Streaming mean / sum of squared deviations (Welford), one per grid point.
struct RunningMoments {
  std::size_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  explicit RunningMoments(std::size_t size) : mean(size, 0.0), m2(size, 0.0) {}

  void add(std::span<const double> x) {
    ++count;
    const double k = static_cast<double>(count);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double delta = x[j] - mean[j];
      mean[j] += delta / k;
      m2[j] += delta * (x[j] - mean[j]);
    }
  }
};

void check_reference(const ReferenceSource& source, const MovingMaxParams& params,
                     std::span<const double> grid) {
  const auto& ref = source.reference;
  if (!(ref.params == params)) {
    throw ParameterError("reference '" + source.origin + "' was computed for " +
                         ref.params.innovation.describe() + " with a=" + format_double(ref.params.a) +
                         ", b=" + format_double(ref.params.b) + " but the experiment uses " +
                         params.innovation.describe() + " with a=" + format_double(params.a) +
                         ", b=" + format_double(params.b));
  }
  const auto& rg = ref.curve.grid;
  bool same = rg.size() == grid.size() && ref.curve.values.size() == grid.size();
  for (std::size_t k = 0; same && k < grid.size(); ++k) {
    same = std::abs(rg[k] - grid[k]) <= kGridMatchTolerance;
  }
  if (!same) {
    throw ParameterError("reference '" + source.origin + "' uses a different t-grid (" +
                         std::to_string(rg.size()) + " points, expected " +
                         std::to_string(grid.size()) + ")");
  }
}

std::string join_sizes(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::string EstimatorSetting::shorthand() const {
  if (scheme == BlockKind::Disjoint && c == 1.0) return "D";
  return std::string(scheme == BlockKind::Disjoint ? "D_" : "O_") + format_double(c);
}

std::vector<EstimatorSetting> standard_estimators() {
  return {{BlockKind::Disjoint, 1.0}, {BlockKind::Sliding, 0.25}, {BlockKind::Sliding, 0.5},
          {BlockKind::Sliding, 1.0},  {BlockKind::Sliding, 2.0},  {BlockKind::Sliding, 4.0}};
}

ExperimentConfig::ExperimentConfig() : m_values(30) {
  std::iota(m_values.begin(), m_values.end(), std::size_t{1});
}

void ExperimentConfig::validate() const {
  if (n == 0) throw ParameterError("series length n must be >= 1");
  if (m_values.empty()) throw ParameterError("no block sizes configured");
  for (std::size_t m : m_values) {
    if (m == 0) throw ParameterError("block size m must be >= 1");
    if (m > n) {
      throw ParameterError("block size m=" + std::to_string(m) + " exceeds series length n=" +
                           std::to_string(n));
    }
  }
  if (estimators.empty()) throw ParameterError("estimator set is empty");
  for (const auto& e : estimators) {
    if (!(e.c > 0.0) || !std::isfinite(e.c)) {
      throw ParameterError("madogram weight c must be > 0, got " + format_double(e.c));
    }
  }
  if (copulas.empty()) throw ParameterError("no copulas configured");
  if (T < 2) throw ParameterError("grid size T must be >= 2");
  if (N == 0) throw ParameterError("iteration count N must be >= 1");
  MovingMaxParams{a, b, copulas.front()}.validate();
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto grid = default_grid(config.T);
  const std::size_t T = grid.size();
  const std::size_t n_est = config.estimators.size();
  const std::size_t n_settings = config.m_values.size() * n_est;
  const bool any_disjoint = std::any_of(config.estimators.begin(), config.estimators.end(),
                                        [](const auto& e) { return e.scheme == BlockKind::Disjoint; });
  const bool any_sliding = std::any_of(config.estimators.begin(), config.estimators.end(),
                                       [](const auto& e) { return e.scheme == BlockKind::Sliding; });

  // Resolve references up front so a mismatch fails before any simulation.
  std::vector<const ReferenceSource*> refs;
  for (const auto& spec : config.copulas) {
    const auto it = config.references.find(spec.tag());
    if (it == config.references.end()) {
      throw ParameterError("no reference Pickands curve for copula '" + spec.tag() + "'");
    }
    check_reference(it->second, config.params_for(spec), grid);
    refs.push_back(&it->second);
  }

  ExperimentResult result;
  for (std::size_t ci = 0; ci < config.copulas.size(); ++ci) {
    const CopulaSpec& spec = config.copulas[ci];
    const MovingMaxParams params = config.params_for(spec);
    const auto& reference = refs[ci]->reference.curve.values;
    const RandomStream root = RandomStream(config.master_seed).split(spec.family_id());

    RunningMoments moments(n_settings * T);
    std::vector<std::vector<double>> batch(kIterationBatch, std::vector<double>(n_settings * T));
    for (std::size_t start = 0; start < config.N; start += kIterationBatch) {
      const std::size_t len = std::min(kIterationBatch, config.N - start);
      numerics::parallel_for(len, config.workers, [&](std::size_t j) {
        RandomStream rng = root.split(start + j);
        const BivariateSeries series = simulate_moving_max(params, config.n, rng);
        auto& out = batch[j];
        for (std::size_t mi = 0; mi < config.m_values.size(); ++mi) {
          const std::size_t m = config.m_values[mi];
          std::optional<BlockPseudoObservations> disjoint;
          std::optional<BlockPseudoObservations> sliding;
          if (any_disjoint) {
            const BlockScheme scheme(BlockKind::Disjoint, m);
            disjoint = rank_transform(block_maxima(series, scheme), scheme);
          }
          if (any_sliding) {
            const BlockScheme scheme(BlockKind::Sliding, m);
            sliding = rank_transform(block_maxima(series, scheme), scheme);
          }
          for (std::size_t ei = 0; ei < n_est; ++ei) {
            const auto& est = config.estimators[ei];
            const auto& pseudo = est.scheme == BlockKind::Disjoint ? *disjoint : *sliding;
            const PickandsCurve curve = boundary_correct(pickands_curve(pseudo, grid, est.c));
            std::copy(curve.values.begin(), curve.values.end(),
                      out.begin() + static_cast<std::ptrdiff_t>((mi * n_est + ei) * T));
          }
        }
      });
      for (std::size_t j = 0; j < len; ++j) moments.add(batch[j]);
    }

    const bool single = config.N == 1;
    for (std::size_t mi = 0; mi < config.m_values.size(); ++mi) {
      for (std::size_t ei = 0; ei < n_est; ++ei) {
        const std::size_t base = (mi * n_est + ei) * T;
        double bias_sum = 0.0;
        double var_sum = 0.0;
        CurveSummary summary;
        for (std::size_t k = 0; k < T; ++k) {
          const double mean = moments.mean[base + k];
          const double var = single ? 0.0 : moments.m2[base + k] / static_cast<double>(config.N - 1);
          bias_sum += (mean - reference[k]) * (mean - reference[k]);
          var_sum += var;
          if (config.keep_curves) {
            summary.mean.push_back(mean);
            summary.variance.push_back(var);
          }
        }
        const auto& est = config.estimators[ei];
        result.records.push_back({spec.tag(), est.scheme, est.c, config.m_values[mi], bias_sum,
                                  var_sum, bias_sum + var_sum, single});
        if (config.keep_curves) {
          summary.copula = spec.tag();
          summary.scheme = est.scheme;
          summary.c = est.c;
          summary.m = config.m_values[mi];
          summary.grid = grid;
          summary.reference = reference;
          result.curves.push_back(std::move(summary));
        }
      }
    }
  }
  return result;
}

Provenance experiment_provenance(const ExperimentConfig& config) {
  Provenance p{{"kind", "metrics"},
               {"build", build_id()},
               {"n", std::to_string(config.n)},
               {"m_values", join_sizes(config.m_values)}};
  std::string estimators;
  for (std::size_t i = 0; i < config.estimators.size(); ++i) {
    if (i) estimators += ",";
    estimators += std::string(to_string(config.estimators[i].scheme)) + ":" +
                  format_double(config.estimators[i].c);
  }
  p.emplace_back("estimators", estimators);
  std::string copulas;
  for (std::size_t i = 0; i < config.copulas.size(); ++i) {
    if (i) copulas += ";";
    copulas += config.copulas[i].describe();
  }
  p.emplace_back("copulas", copulas);
  p.emplace_back("a", format_double(config.a));
  p.emplace_back("b", format_double(config.b));
  p.emplace_back("T", std::to_string(config.T));
  p.emplace_back("N", std::to_string(config.N));
  p.emplace_back("master_seed", std::to_string(config.master_seed));
  p.emplace_back("margins", "rank");
  p.emplace_back("variance_divisor", "N-1");
  p.emplace_back("series_reuse", "common");
  if (config.N == 1) p.emplace_back("single_iteration", "true");
  for (const auto& spec : config.copulas) {
    const auto it = config.references.find(spec.tag());
    if (it == config.references.end()) continue;
    const auto& ref = it->second.reference;
    p.emplace_back("reference." + spec.tag(),
                   it->second.origin + " (big_m=" + std::to_string(ref.big_m) +
                       ",reps=" + std::to_string(ref.reps) + ",seed=" + std::to_string(ref.seed) +
                       ")");
  }
  return p;
}

void sort_records(std::vector<MetricsRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& x, const auto& y) {
    return std::make_tuple(x.copula, to_string(x.scheme), x.c, x.m) <
           std::make_tuple(y.copula, to_string(y.scheme), y.c, y.m);
  });
}

void emit_metrics(std::ostream& out, std::vector<MetricsRecord> records,
                  const Provenance& provenance) {
  if (records.empty()) throw ParameterError("no metrics records to write");
  sort_records(records);
  write_provenance(out, provenance);
  out << "copula,scheme,c,m,B_sum,Var_sum,MSE_sum\n";
  for (const auto& r : records) {
    out << r.copula << "," << to_string(r.scheme) << "," << format_double(r.c) << "," << r.m << ","
        << format_double(r.B_sum) << "," << format_double(r.Var_sum) << ","
        << format_double(r.MSE_sum) << "\n";
  }
}

void emit_metrics(const std::filesystem::path& path, std::vector<MetricsRecord> records,
                  const Provenance& provenance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  emit_metrics(out, std::move(records), provenance);
  out.flush();
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

std::vector<MetricsRecord> read_metrics_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
  std::vector<MetricsRecord> out;
  std::string line;
  std::size_t row = 0;
  bool header_seen = false;
  bool single = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line == "# single_iteration=true") single = true;
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    MetricsRecord r{};
    double m = 0.0;
    if (cells.size() != 7 || !parse_double(cells[2], r.c) || !parse_double(cells[3], m) ||
        !parse_double(cells[4], r.B_sum) || !parse_double(cells[5], r.Var_sum) ||
        !parse_double(cells[6], r.MSE_sum)) {
      throw InputError(path.string() + ": row " + std::to_string(row) + ": malformed metrics row");
    }
    r.copula = cells[0];
    r.scheme = parse_block_kind(cells[1]);
    r.m = static_cast<std::size_t>(m);
    r.single_iteration = single;
    out.push_back(r);
  }
  return out;
}

void dump_curves(const std::filesystem::path& directory, const std::vector<CurveSummary>& curves,
                 const Provenance& provenance) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw InputError("cannot create directory '" + directory.string() + "': " + ec.message());
  for (const auto& c : curves) {
    const auto name = "curve_" + c.copula + "_" + std::string(to_string(c.scheme)) + "_c" +
                      format_double(c.c) + "_m" + std::to_string(c.m) + ".csv";
    const auto path = directory / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    write_provenance(out, provenance);
    write_provenance(out, {{"copula", c.copula},
                           {"scheme", std::string(to_string(c.scheme))},
                           {"c", format_double(c.c)},
                           {"m", std::to_string(c.m)}});
    out << "t,mean,variance,reference\n";
    for (std::size_t k = 0; k < c.grid.size(); ++k) {
      out << format_double(c.grid[k]) << "," << format_double(c.mean[k]) << ","
          << format_double(c.variance[k]) << "," << format_double(c.reference[k]) << "\n";
    }
  }
}

}  // namespace pickmad
