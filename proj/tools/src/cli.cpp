// Copyright 2026 The pickmad Authors
// SPDX-License-Identifier: Apache-2.0
#include "pickmad/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "pickmad/csv_io.hpp"
#include "pickmad/errors.hpp"
#include "pickmad/experiment.hpp"
#include "pickmad/format.hpp"
#include "pickmad/madogram.hpp"
#include "pickmad/theory.hpp"

namespace pickmad::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kDefaultSeed = 20220101;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::size_t parse_size(std::string_view token, std::string_view whole) {
  std::size_t v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw ParameterError("cannot parse '" + std::string(whole) + "' as a list of integers");
  }
  return v;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string join_reals(const std::vector<double>& values) {
  std::vector<std::string> parts;
  for (double v : values) parts.push_back(format_double(v));
  return join(parts, ",");
}

// Writes to --out when given, otherwise to the fallback stream.
template <typename Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw InputError("write to '" + path + "' failed");
}

std::vector<CopulaSpec> parse_copulas(const std::string& text) {
  std::vector<CopulaSpec> out;
  std::set<std::string> seen;
  for (auto tag : split(text, ',')) {
    if (!seen.insert(std::string(tag)).second) continue;
    out.push_back(CopulaSpec::from_tag(tag));
  }
  if (out.empty()) throw ParameterError("no copula given");
  return out;
}

Provenance model_provenance(const MovingMaxParams& params) {
  Provenance p = copula_metadata(params.innovation);
  p.emplace_back("a", format_double(params.a));
  p.emplace_back("b", format_double(params.b));
  return p;
}

void append(Provenance& into, const Provenance& more) {
  into.insert(into.end(), more.begin(), more.end());
}

// ---------------------------------------------------------------- options

struct ModelOptions {
  std::string copula = "opclayton";
  double a = 0.25;
  double b = 0.5;

  void add(CLI::App& app, bool many) {
    app.add_option("--copula", copula,
                   many ? "Innovation copulas, comma separated "
                          "(opclayton|t4|gaussian|independence|comonotone|logistic)"
                        : "Innovation copula (opclayton|t4|gaussian|independence|comonotone|logistic)")
        ->capture_default_str();
    app.add_option("--a", a, "Moving-max weight of the first coordinate")->capture_default_str();
    app.add_option("--b", b, "Moving-max weight of the second coordinate")->capture_default_str();
  }

  [[nodiscard]] MovingMaxParams single() const {
    const auto specs = parse_copulas(copula);
    if (specs.size() != 1) throw ParameterError("this command takes exactly one --copula");
    MovingMaxParams params{a, b, specs.front()};
    params.validate();
    return params;
  }
};

struct ReferenceOptions {
  std::size_t big_m = 10000;
  std::size_t reps = 100000;
  std::uint64_t seed = kDefaultSeed;

  void add(CLI::App& app, const char* prefix) {
    const std::string p = prefix;
    app.add_option("--" + p + "m", big_m, "Block size of the reference oracle")
        ->capture_default_str();
    app.add_option("--" + p + "reps", reps, "Number of reference blocks")->capture_default_str();
    app.add_option("--" + p + "seed", seed, "Seed of the reference oracle")->capture_default_str();
  }

  void validate() const {
    if (big_m == 0) throw ParameterError("reference block size must be >= 1");
    if (reps < 2) throw ParameterError("reference needs at least 2 blocks");
  }
};

// ---------------------------------------------------------------- simulate

struct SimulateCommand {
  ModelOptions model;
  std::size_t n = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::string out_path;

  void add(CLI::App& app) {
    model.add(app, false);
    app.add_option("--n", n, "Series length")->capture_default_str();
    app.add_option("--seed", seed, "Master seed")->capture_default_str();
    app.add_option("--out", out_path, "Output CSV (default stdout)");
  }

  int run(std::ostream& out, std::ostream&) const {
    const auto params = model.single();
    if (n == 0) throw ParameterError("series length n must be >= 1");
    // Same stream as iteration 0 of an experiment with this seed.
    auto rng = RandomStream(seed).split(params.innovation.family_id()).split(0);
    const auto series = simulate_moving_max(params, n, rng);
    Provenance p{{"kind", "series"}, {"command", "simulate"}, {"build", build_id()}};
    append(p, model_provenance(params));
    p.emplace_back("n", std::to_string(n));
    p.emplace_back("seed", std::to_string(seed));
    p.emplace_back("stream", "seed/family/0");
    emit(out_path, out, [&](std::ostream& os) { write_series_csv(os, series, p); });
    return kOk;
  }
};

// ---------------------------------------------------------------- estimate

struct EstimateCommand {
  std::string input;
  std::size_t m = 1;
  std::string scheme = "sliding";
  double c = 1.0;
  std::size_t T = 51;
  bool corrected = true;
  std::string out_path;

  void add(CLI::App& app) {
    app.add_option("--input,input", input, "Two-column series CSV")->required();
    app.add_option("--m", m, "Block size")->capture_default_str();
    app.add_option("--scheme", scheme, "disjoint|sliding")->capture_default_str();
    app.add_option("--c", c, "Madogram weight c > 0")->capture_default_str();
    app.add_option("--T", T, "Number of grid points on [0, 1]")->capture_default_str();
    app.add_flag("--corrected,!--uncorrected", corrected, "Apply the boundary correction")
        ->capture_default_str();
    app.add_option("--out", out_path, "Output CSV (default stdout)");
  }

  int run(std::ostream& out, std::ostream&) const {
    const BlockScheme block_scheme(parse_block_kind(scheme), m);
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw ParameterError("madogram weight c must be > 0, got " + format_double(c));
    }
    const auto grid = default_grid(T);
    const auto series = read_series_csv(fs::path(input));
    auto curve = estimate_pickands_curve(series, block_scheme, c, grid, MarginMode::RankBased);
    if (corrected) curve = boundary_correct(curve);
    const Provenance p{{"kind", "curve"},          {"command", "estimate"},
                       {"build", build_id()},      {"input", input},
                       {"n", std::to_string(series.size())},
                       {"T", std::to_string(T)}};
    emit(out_path, out, [&](std::ostream& os) { write_curve_csv(os, curve, p); });
    return kOk;
  }
};

// ---------------------------------------------------------------- reference

std::string cache_name(const MovingMaxParams& params, const ReferenceOptions& ref, std::size_t T) {
  std::ostringstream name;
  name << "reference_" << params.innovation.tag() << "_a" << format_double(params.a) << "_b"
       << format_double(params.b) << "_M" << ref.big_m << "_R" << ref.reps << "_s" << ref.seed
       << "_T" << T << ".csv";
  return name.str();
}

bool same_settings(const ReferenceCurve& loaded, const MovingMaxParams& params,
                   const ReferenceOptions& ref, std::size_t T) {
  return loaded.params == params && loaded.big_m == ref.big_m && loaded.reps == ref.reps &&
         loaded.seed == ref.seed && loaded.curve.grid.size() == T;
}

// Computes a reference curve, going through the cache directory when given.
ReferenceCurve obtain_reference(const MovingMaxParams& params, const ReferenceOptions& ref,
                                std::size_t T, unsigned workers, const std::string& cache_dir,
                                std::ostream& err) {
  fs::path cached;
  if (!cache_dir.empty()) {
    cached = fs::path(cache_dir) / cache_name(params, ref, T);
    if (fs::exists(cached)) {
      auto loaded = read_reference_csv(cached);
      if (same_settings(loaded, params, ref, T)) return loaded;
      err << "pickmad: ignoring stale reference cache " << cached.string() << "\n";
    }
  }
  const auto grid = default_grid(T);
  auto computed = reference_pickands_oracle(params, ref.big_m, ref.reps, grid, ref.seed, workers);
  if (!cached.empty()) {
    std::error_code ec;
    fs::create_directories(cached.parent_path(), ec);
    const std::string tmp = cached.string() + ".tmp";
    emit(tmp, err, [&](std::ostream& os) { write_reference_csv(os, computed); });
    fs::rename(tmp, cached);
  }
  return computed;
}

struct ReferenceCommand {
  ModelOptions model;
  ReferenceOptions ref;
  std::size_t T = 51;
  unsigned workers = 0;
  std::string out_path;

  void add(CLI::App& app) {
    model.add(app, false);
    ref.add(app, "ref-");
    app.add_option("--T", T, "Number of grid points on [0, 1]")->capture_default_str();
    app.add_option("--workers", workers, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--out", out_path, "Output CSV (default stdout)");
  }

  int run(std::ostream& out, std::ostream& err) const {
    const auto params = model.single();
    ref.validate();
    const auto curve = obtain_reference(params, ref, T, workers, "", err);
    emit(out_path, out, [&](std::ostream& os) { write_reference_csv(os, curve); });
    return kOk;
  }
};

// ---------------------------------------------------------------- experiment

struct ExperimentCommand {
  ModelOptions model;
  ReferenceOptions ref;
  std::size_t n = 1000;
  std::string m_text = "1..30";
  std::string scheme;
  std::string c_text;
  std::size_t T = 51;
  std::size_t N = 1000;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 0;
  std::string out_path;
  std::vector<std::string> reference_paths;
  std::string cache_dir;
  std::string dump_dir;

  void add(CLI::App& app) {
    model.copula = "opclayton,t4,gaussian";
    model.add(app, true);
    ref.add(app, "ref-");
    app.add_option("--n", n, "Series length")->capture_default_str();
    app.add_option("--m", m_text, "Block sizes: scalar, comma list or a..b range")
        ->capture_default_str();
    app.add_option("--scheme", scheme,
                   "disjoint|sliding; with --c replaces the default estimator set");
    app.add_option("--c", c_text, "Madogram weights, comma separated");
    app.add_option("--T", T, "Number of grid points on [0, 1]")->capture_default_str();
    app.add_option("--N", N, "Monte Carlo iterations")->capture_default_str();
    app.add_option("--seed", seed, "Master seed")->capture_default_str();
    app.add_option("--workers", workers, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--out", out_path, "Metrics CSV (default stdout)");
    app.add_option("--reference", reference_paths, "Reference curve CSV (repeatable)");
    app.add_option("--reference-cache", cache_dir, "Directory for computed reference curves");
    app.add_option("--dump-curves", dump_dir, "Directory for per-setting mean/variance curves");
  }

  [[nodiscard]] ExperimentConfig config() const {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.m_values = parse_size_list(m_text);
    if (!scheme.empty() || !c_text.empty()) {
      const auto kind = parse_block_kind(scheme.empty() ? "sliding" : scheme);
      const auto cs = c_text.empty() ? std::vector<double>{1.0} : parse_real_list(c_text);
      cfg.estimators.clear();
      for (double c : cs) cfg.estimators.push_back({kind, c});
    }
    cfg.copulas = parse_copulas(model.copula);
    cfg.a = model.a;
    cfg.b = model.b;
    cfg.T = T;
    cfg.N = N;
    cfg.master_seed = seed;
    cfg.workers = workers;
    cfg.keep_curves = !dump_dir.empty();
    return cfg;
  }

  int run(std::ostream& out, std::ostream& err) const {
    auto cfg = config();
    cfg.validate();
    ref.validate();
    for (const auto& path : reference_paths) {
      auto loaded = read_reference_csv(fs::path(path));
      const auto tag = loaded.params.innovation.tag();
      cfg.references[tag] = ReferenceSource{std::move(loaded), path};
    }
    for (const auto& spec : cfg.copulas) {
      if (cfg.references.count(spec.tag())) continue;
      const auto params = cfg.params_for(spec);
      cfg.references[spec.tag()] =
          ReferenceSource{obtain_reference(params, ref, T, workers, cache_dir, err), "oracle"};
    }
    const auto result = run_experiment(cfg);
    auto provenance = experiment_provenance(cfg);
    provenance.insert(provenance.begin() + 1, {"command", "experiment"});
    emit(out_path, out,
         [&](std::ostream& os) { emit_metrics(os, result.records, provenance); });
    if (!dump_dir.empty()) dump_curves(fs::path(dump_dir), result.curves, provenance);
    return kOk;
  }
};

// ---------------------------------------------------------------- theory

struct TheoryCommand {
  std::string copula = "opclayton";
  std::string t_text;
  std::string c_text = "1";
  std::size_t T = 11;
  std::size_t m = 10;
  std::size_t n = 1000;
  std::optional<double> s_value;
  std::optional<double> rho;
  std::optional<double> a_m;
  std::string out_path;

  void add(CLI::App& app) {
    app.add_option("--copula", copula, "Copula whose extreme-value attractor is evaluated")
        ->capture_default_str();
    app.add_option("--t", t_text, "Grid points, comma separated (default: T-point grid)");
    app.add_option("--T", T, "Grid size when --t is absent")->capture_default_str();
    app.add_option("--c", c_text, "Madogram weights, comma separated")->capture_default_str();
    app.add_option("--m", m, "Block size for the variance term")->capture_default_str();
    app.add_option("--n", n, "Series length for the variance term")->capture_default_str();
    app.add_option("--s-value", s_value, "Second-order limit S(e^-(1-t), e^-t)");
    app.add_option("--rho", rho, "Second-order index (< 0)");
    app.add_option("--a-m", a_m, "Second-order rate a(m) (> 0)");
    app.add_option("--out", out_path, "Output CSV (default stdout)");
  }

  int run(std::ostream& out, std::ostream&) const {
    const auto spec = CopulaSpec::from_tag(copula);
    const auto model = LimitModel::from_copula(spec);
    const auto ts = t_text.empty() ? default_grid(T) : parse_real_list(t_text);
    validate_grid(ts);
    const auto cs = parse_real_list(c_text);
    for (double c : cs) {
      if (!(c > 0.0)) throw ParameterError("madogram weight c must be > 0, got " + format_double(c));
    }
    if (m == 0 || m > n) throw ParameterError("need 1 <= m <= n for the variance term");
    const int given = s_value.has_value() + rho.has_value() + a_m.has_value();
    if (given != 0 && given != 3) {
      throw ParameterError("--s-value, --rho and --a-m must be given together");
    }
    if (given == 3 && !(*rho < 0.0 && *a_m > 0.0)) {
      throw ParameterError("second-order terms need rho < 0 and a(m) > 0");
    }
    Provenance p{{"kind", "theory"}, {"command", "theory"}, {"build", build_id()}};
    append(p, copula_metadata(spec));
    p.emplace_back("model", model.label());
    p.emplace_back("t", join_reals(ts));
    p.emplace_back("c", join_reals(cs));
    p.emplace_back("m", std::to_string(m));
    p.emplace_back("n", std::to_string(n));
    if (given == 3) {
      p.emplace_back("s_value", format_double(*s_value));
      p.emplace_back("rho", format_double(*rho));
      p.emplace_back("a_m", format_double(*a_m));
    }
    emit(out_path, out, [&](std::ostream& os) {
      write_provenance(os, p);
      os << "t,c,pickands,madogram,madogram_quadrature,asymptotic_variance";
      if (given == 3) os << ",asymptotic_bias";
      os << "\n";
      for (double t : ts) {
        const double A = model.pickands(t);
        for (double c : cs) {
          os << format_double(t) << "," << format_double(c) << "," << format_double(A) << ","
             << format_double(true_madogram_closed_form(model, t, c)) << ","
             << format_double(true_madogram(model, t, c)) << ","
             << format_double(asymptotic_variance(A, c, m, n));
          if (given == 3) {
            os << "," << format_double(asymptotic_bias(*s_value, *rho, *a_m, A, c));
          }
          os << "\n";
        }
      }
    });
    return kOk;
  }
};

// Splices "--config path" contents in right after the subcommand so later
// flags on the command line take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size()) throw ParameterError("--config needs a path");
      const auto more = config_file_args(args[++i]);
      from_file.insert(from_file.end(), more.begin(), more.end());
    } else if (a.rfind("--config=", 0) == 0) {
      const auto more = config_file_args(a.substr(9));
      from_file.insert(from_file.end(), more.begin(), more.end());
    } else {
      out.push_back(a);
    }
  }
  if (!from_file.empty() && !out.empty()) {
    out.insert(out.begin() + 1, from_file.begin(), from_file.end());
  }
  return out;
}

}  // namespace

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::set<std::size_t> values;
  for (auto part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string_view::npos) {
      values.insert(parse_size(part, text));
      continue;
    }
    const auto lo = parse_size(trim(part.substr(0, dots)), text);
    const auto hi = parse_size(trim(part.substr(dots + 2)), text);
    if (lo > hi) throw ParameterError("empty range '" + std::string(part) + "'");
    for (auto v = lo; v <= hi; ++v) values.insert(v);
  }
  return {values.begin(), values.end()};
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> values;
  for (auto part : split(text, ',')) {
    double v = 0.0;
    if (!parse_double(part, v) || !std::isfinite(v)) {
      throw ParameterError("cannot parse '" + std::string(text) + "' as a list of numbers");
    }
    values.push_back(v);
  }
  return values;
}

std::vector<std::string> config_file_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::vector<std::string> args;
  std::string raw;
  std::size_t row = 0;
  while (std::getline(in, raw)) {
    ++row;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';' || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InputError(path + ": row " + std::to_string(row) + ": expected key = value");
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.rfind("--", 0) == 0) key.remove_prefix(2);
    args.push_back("--" + std::string(key) + "=" + std::string(value));
  }
  return args;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Madogram estimation of Pickands dependence functions from block maxima",
               "pickmad"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", "pickmad " + build_id());

  SimulateCommand simulate;
  EstimateCommand estimate;
  ExperimentCommand experiment;
  ReferenceCommand reference;
  TheoryCommand theory;
  auto* simulate_app = app.add_subcommand("simulate", "Simulate a moving-maximum series");
  auto* estimate_app = app.add_subcommand("estimate", "Estimate a Pickands curve from a CSV series");
  auto* experiment_app = app.add_subcommand("experiment", "Run the Monte Carlo experiment");
  auto* reference_app = app.add_subcommand("reference", "Compute a reference Pickands curve");
  auto* theory_app = app.add_subcommand("theory", "Evaluate limit madogram, variance and bias");
  simulate.add(*simulate_app);
  estimate.add(*estimate_app);
  experiment.add(*experiment_app);
  reference.add(*reference_app);
  theory.add(*theory_app);
  for (auto* sub : {simulate_app, estimate_app, experiment_app, reference_app, theory_app}) {
    sub->add_option("--config", "Flat key = value file of flags");  // expanded before parsing
  }

  try {
    auto args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::CallForVersion&) {
      out << "pickmad " << build_id() << "\n";
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "pickmad: " << e.what() << "\n";
      for (auto* sub : app.get_subcommands()) {
        err << "run 'pickmad " << sub->get_name() << " --help' for usage\n";
      }
      return kParameterError;
    }
    if (simulate_app->parsed()) return simulate.run(out, err);
    if (estimate_app->parsed()) return estimate.run(out, err);
    if (experiment_app->parsed()) return experiment.run(out, err);
    if (reference_app->parsed()) return reference.run(out, err);
    return theory.run(out, err);
  } catch (const InputError& e) {
    err << "pickmad: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParameterError& e) {
    err << "pickmad: parameter error: " << e.what() << "\n";
    return kParameterError;
  } catch (const DomainError& e) {
    err << "pickmad: parameter error: " << e.what() << "\n";
    return kParameterError;
  } catch (const NumericalError& e) {
    err << "pickmad: numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const fs::filesystem_error& e) {
    err << "pickmad: input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "pickmad: numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace pickmad::cli
