#pragma once

// Command-line front end for the elemental estimators.
//
// Exit codes: 0 success, 1 verification or runtime failure, 2 usage or
// configuration error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "elemental/elemental.hpp"
#include "elemental/io.hpp"

namespace elemental::cli {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

using json = nlohmann::json;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// "lo:hi:count", count equispaced points including both ends.
inline std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw UsageError("grid must look like lo:hi:count, got '" + spec + "'");
  double lo = 0, hi = 0;
  long long count = 0;
  try {
    std::size_t pos = 0;
    lo = std::stod(parts[0], &pos);
    if (pos != parts[0].size()) throw std::invalid_argument("lo");
    hi = std::stod(parts[1], &pos);
    if (pos != parts[1].size()) throw std::invalid_argument("hi");
    count = std::stoll(parts[2], &pos);
    if (pos != parts[2].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw UsageError("grid must look like lo:hi:count, got '" + spec + "'");
  }
  if (count < 1 || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo || (count == 1 && hi != lo)) {
    throw UsageError("invalid grid '" + spec + "'");
  }
  std::vector<double> out;
  for (long long k = 0; k < count; ++k) {
    out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  return out;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Collects outputs of one command. Files go to disk only on commit, each
/// CSV/JSON output paired with one manifest next to the primary output.
class Run {
public:
  Run(std::string command, std::ostream& out) : command_(std::move(command)), out_(out), started_(utc_timestamp()) {}

  json& config() { return config_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void add_errors(std::size_t k) { errors_ += k; }
  std::size_t errors() const { return errors_; }

  /// Writes `content` to `path`, or to the console when `path` is empty.
  void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
      out_ << content;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + path + "'");
    f << content;
    outputs_.push_back(path);
  }

  void write_manifest() {
    if (outputs_.empty()) return;
    json m;
    m["command"] = command_;
    m["config"] = config_;
    if (seed_) m["seed"] = *seed_;
    m["version"] = kVersion;
    m["started"] = started_;
    m["finished"] = utc_timestamp();
    m["outputs"] = outputs_;
    m["error_count"] = errors_;
    std::ofstream f(outputs_.front() + ".manifest.json", std::ios::binary);
    f << m.dump(2) << '\n';
  }

private:
  std::string command_;
  std::ostream& out_;
  std::string started_;
  json config_ = json::object();
  std::optional<std::uint64_t> seed_;
  std::vector<std::string> outputs_;
  std::size_t errors_ = 0;
};

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct DataSet {
  std::vector<long long> reps;
  std::vector<std::vector<double>> samples;
};

inline double parse_number(const std::string& field, std::size_t line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
    if (pos != field.size() || !std::isfinite(v)) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw UsageError("line " + std::to_string(line) + ": '" + field + "' is not a finite number");
  }
}

/// Accepts the `rep,rank,value` files written by `sample` (any header with
/// `rep` and `value` columns) or a single column of numbers, optionally with
/// a header line.
inline DataSet read_data(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    for (std::string f; std::getline(ls, f, ',');) fields.push_back(f);
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw UsageError("data file is empty");

  auto is_header = [](const std::vector<std::string>& r) {
    for (const auto& f : r) {
      for (char c : f) {
        if (std::isalpha(static_cast<unsigned char>(c)) && c != 'e' && c != 'E') return true;
      }
    }
    return false;
  };

  DataSet data;
  std::size_t first = 0;
  long rep_col = -1, value_col = 0;
  if (is_header(rows[0])) {
    first = 1;
    for (std::size_t c = 0; c < rows[0].size(); ++c) {
      if (rows[0][c] == "rep") rep_col = static_cast<long>(c);
      if (rows[0][c] == "value") value_col = static_cast<long>(c);
    }
    if (rows[0].size() > 1 && (rep_col < 0 || value_col < 0 || rows[0][static_cast<std::size_t>(value_col)] != "value")) {
      throw UsageError("multi-column data needs 'rep' and 'value' columns");
    }
  }
  std::map<long long, std::size_t> slot;
  for (std::size_t r = first; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (static_cast<long>(row.size()) <= std::max(rep_col, value_col)) {
      throw UsageError("line " + std::to_string(r + 1) + ": missing columns");
    }
    const double v = parse_number(row[static_cast<std::size_t>(value_col)], r + 1);
    long long rep = 1;
    if (rep_col >= 0) rep = static_cast<long long>(parse_number(row[static_cast<std::size_t>(rep_col)], r + 1));
    auto [it, inserted] = slot.emplace(rep, data.samples.size());
    if (inserted) {
      data.reps.push_back(rep);
      data.samples.emplace_back();
    }
    data.samples[it->second].push_back(v);
  }
  if (data.samples.empty()) throw UsageError("data file has no values");
  return data;
}

// ---- sample ---------------------------------------------------------------

struct SampleArgs {
  std::size_t n = 0;
  double xi = 0.0, mu = 0.0, sigma = 1.0;
  std::size_t reps = 1;
  std::uint64_t seed = 1;
  std::string out;
};

inline int cmd_sample(const SampleArgs& a, std::ostream& out) {
  if (a.n < 1 || a.reps < 1) throw UsageError("--n and --reps must be positive");
  GpdParams p;
  try {
    p = GpdParams(a.mu, a.sigma, a.xi);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  Run run("sample", out);
  run.set_seed(a.seed);
  run.config() = {{"n", a.n}, {"xi", a.xi}, {"mu", a.mu}, {"sigma", a.sigma}, {"reps", a.reps}, {"seed", a.seed}};
  std::string csv = std::string(io::kSampleHeader) + "\n";
  for (std::size_t r = 1; r <= a.reps; ++r) {
    RandomStream rs = RandomStream::child(a.seed, r);
    const OrderedSample s = sample(p, a.n, rs);
    for (std::size_t k = 1; k <= s.size(); ++k) {
      csv += std::to_string(r) + "," + std::to_string(k) + "," + io::format_double(s[k]) + "\n";
    }
  }
  run.emit(a.out, csv);
  run.write_manifest();
  return kExitOk;
}

// ---- estimate -------------------------------------------------------------

struct EstimateArgs {
  std::string data;
  std::string scheme;
  std::string weights;
  bool all_elementals = false;
  bool baselines = false;
  std::size_t pickands_k = 0;
  std::size_t hill_k = 0;
  std::string out;
};

inline int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  if (!a.scheme.empty() && !a.weights.empty()) throw UsageError("give either --scheme or --weights, not both");
  std::optional<SchemeName> scheme;
  std::optional<SpacingWeights> custom;
  if (!a.weights.empty()) {
    try {
      custom = io::spacing_weights_of(io::weights_from_json(json::parse(read_file(a.weights))));
    } catch (const json::exception& e) {
      throw UsageError(std::string("--weights: ") + e.what());
    } catch (const PreconditionError& e) {
      throw UsageError(e.what());
    }
  } else {
    scheme = parse_scheme(a.scheme.empty() ? "linearly-rising" : a.scheme);
    if (!scheme || *scheme == SchemeName::Custom) throw UsageError("unknown --scheme '" + a.scheme + "'");
  }
  const DataSet data = read_data(read_file(a.data));

  Run run("estimate", out);
  run.config() = {{"data", a.data},
                  {"scheme", scheme ? std::string(to_string(*scheme)) : std::string("weights")},
                  {"weights", a.weights},
                  {"all_elementals", a.all_elementals},
                  {"baselines", a.baselines}};
  const std::string label = scheme ? std::string(to_string(*scheme)) : std::string("weights");
  std::string csv = std::string(io::kEstimateHeader) + "\n";
  auto row = [&](long long rep, const std::string& est, const std::string& value) {
    csv += std::to_string(rep) + "," + est + "," + value + "\n";
  };
  auto error_row = [&](long long rep, const std::string& reason) {
    row(rep, "error", reason);
    run.add_errors(1);
  };

  for (std::size_t k = 0; k < data.samples.size(); ++k) {
    const long long rep = data.reps[k];
    const OrderedSample s = OrderedSample::from_unsorted(data.samples[k]);
    const std::size_t n = s.size();
    if (n < 3) {
      error_row(rep, "too-small");
      continue;
    }
    if (!s.strictly_decreasing()) {
      error_row(rep, "tie");
      continue;
    }
    if (custom && custom->n() != n) {
      error_row(rep, "size-mismatch");
      continue;
    }
    const SpacingWeights aw = custom ? *custom : expand(named_scheme(*scheme, n));
    row(rep, label, io::format_double(evaluate_spacing_weights(s, aw)));
    if (a.all_elementals) {
      for (const auto& [e, v] : all_elementals(s)) row(rep, elemental_label(e), io::format_double(v));
    }
    if (a.baselines) {
      const std::size_t kp = a.pickands_k ? a.pickands_k : std::max<std::size_t>(default_pickands_k(n), 1);
      const std::size_t kh = a.hill_k ? a.hill_k : std::max<std::size_t>(default_hill_k(n), 1);
      const std::string pk_label = "pickands_k" + std::to_string(kp);
      const std::string hl_label = "hill_k" + std::to_string(kh);
      try {
        row(rep, pk_label, io::format_double(pickands(s, kp)));
      } catch (const IndexError&) {
        error_row(rep, pk_label + ":index");
      }
      try {
        row(rep, hl_label, io::format_double(hill(s, kh)));
      } catch (const IndexError&) {
        error_row(rep, hl_label + ":index");
      } catch (const DomainError&) {
        error_row(rep, hl_label + ":domain");
      }
    }
  }
  run.config()["error_count"] = run.errors();
  run.emit(a.out, csv);
  run.write_manifest();
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::size_t n = 0;
  std::string weights;
  std::string out;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if ((a.n == 0) == a.weights.empty()) throw UsageError("give exactly one of --n or --weights");
  Run run("verify", out);
  json doc;
  bool passed = true;
  if (!a.weights.empty()) {
    SpacingWeights w = [&] {
      try {
        return io::spacing_weights_of(io::weights_from_json(json::parse(read_file(a.weights)), false));
      } catch (const json::exception& e) {
        throw UsageError(std::string("--weights: ") + e.what());
      } catch (const PreconditionError& e) {
        throw UsageError(e.what());
      }
    }();
    const CertificateReport rep = certify(w);
    doc = io::to_json(rep);
    passed = rep.passed;
    run.config() = {{"weights", a.weights}};
  } else {
    if (a.n < 3) throw UsageError("--n must be at least 3");
    if (a.n > detail::kExactBinomialLimit) throw UsageError("--n above " + std::to_string(detail::kExactBinomialLimit) + " is not supported");
    run.config() = {{"n", a.n}};
    doc["n"] = a.n;
    json elems = json::array();
    for (const auto& e : elemental_indices(a.n)) {
      const CertificateReport rep = certify(ElementalWeights::single(a.n, e));
      passed = passed && rep.passed;
      elems.push_back({{"i", e.i}, {"j", e.j}, {"certificate", io::to_json(rep)}});
    }
    doc["elementals"] = elems;
    json schemes = json::object();
    for (SchemeName s : kNamedSchemes) {
      const CertificateReport rep = certify(named_scheme(s, a.n));
      passed = passed && rep.passed;
      schemes[std::string(to_string(s))] = io::to_json(rep);
    }
    doc["schemes"] = schemes;
    if (a.n <= kMaxRankN) {
      const BasisRank br = elemental_basis_rank(a.n);
      const bool rank_ok = br.elemental_rank == elemental_count(a.n) && br.constraint_rank == a.n - 1 &&
                           br.spans_nullspace;
      passed = passed && rank_ok;
      doc["rank"] = {{"elemental_rank", br.elemental_rank},
                     {"constraint_rank", br.constraint_rank},
                     {"augmented_rank", br.augmented_rank},
                     {"spans_nullspace", br.spans_nullspace},
                     {"max_residual", br.max_residual}};
    }
    doc["passed"] = passed;
  }
  run.emit(a.out, doc.dump(2) + "\n");
  run.write_manifest();
  return passed ? kExitOk : kExitFailure;
}

// ---- experiment -----------------------------------------------------------

struct CommonExperimentArgs {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  double mu = 0.0, sigma = 1.0;
  std::string origin = "resolved";
  std::string out;

  SamplingSpec sampling() const {
    try {
      GpdParams(mu, sigma, 0.0);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    SamplingSpec s{mu, sigma, SampleOrigin::Resolved};
    if (origin == "natural") s.origin = SampleOrigin::Natural;
    else if (origin != "resolved") throw UsageError("--origin must be 'resolved' or 'natural'");
    return s;
  }

  json echo() const {
    return {{"seed", seed}, {"threads", threads}, {"mu", mu}, {"sigma", sigma}, {"origin", origin}};
  }
};

inline std::vector<double> xi_values(const std::string& grid, const std::vector<double>& list,
                                     const std::string& fallback) {
  if (!list.empty()) {
    if (!grid.empty()) throw UsageError("give either --xi or --xi-grid, not both");
    return list;
  }
  return parse_grid(grid.empty() ? fallback : grid);
}

struct BiasArgs {
  CommonExperimentArgs common;
  std::vector<std::size_t> n{7};
  std::string xi_grid;
  std::vector<double> xi;
  std::size_t reps = 50000;
  std::string scheme;
  bool baselines = false;
};

inline int cmd_bias(const BiasArgs& a, std::ostream& out) {
  ExperimentConfig cfg;
  cfg.n_values = a.n;
  cfg.xi_values = xi_values(a.xi_grid, a.xi, "-10:10:21");
  cfg.replications = a.reps;
  cfg.seed = a.common.seed;
  cfg.sampling = a.common.sampling();
  cfg.run.threads = a.common.threads;
  cfg.baselines = a.baselines;
  if (!a.scheme.empty()) {
    cfg.scheme = parse_scheme(a.scheme);
    if (!cfg.scheme || *cfg.scheme == SchemeName::Custom) throw UsageError("unknown --scheme '" + a.scheme + "'");
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  Run run("experiment bias", out);
  run.set_seed(cfg.seed);
  run.config() = a.common.echo();
  run.config()["n"] = cfg.n_values;
  run.config()["xi"] = cfg.xi_values;
  run.config()["reps"] = cfg.replications;
  run.config()["scheme"] = a.scheme;
  run.config()["baselines"] = a.baselines;
  std::ostringstream csv;
  io::write_summary_csv(csv, bias_sweep(cfg));
  run.emit(a.common.out, csv.str());
  run.write_manifest();
  return kExitOk;
}

struct EfficiencyArgs {
  CommonExperimentArgs common;
  std::size_t n = 20;
  std::string xi_grid;
  std::vector<double> xi;
  std::size_t block = 8000;
  std::vector<std::string> schemes{"equal-weight", "top-row", "quadratic-gap", "linearly-rising"};
  std::optional<double> optimal_at;
  std::string efficiency_out;
};

inline int cmd_efficiency(const EfficiencyArgs& a, std::ostream& out) {
  const auto xis = xi_values(a.xi_grid, a.xi, "-3:3:13");
  const SamplingSpec sampling = a.common.sampling();
  const RunOptions opt{a.common.threads};
  if (a.n < 3) throw UsageError("--n must be at least 3");
  if (a.block < elemental_count(a.n) + 2) {
    throw UsageError("--block must be at least " + std::to_string(elemental_count(a.n) + 2));
  }
  std::vector<NamedWeights> schemes;
  for (const auto& s : a.schemes) {
    const auto name = parse_scheme(s);
    if (!name || *name == SchemeName::Custom) throw UsageError("unknown scheme '" + s + "'");
    schemes.push_back({std::string(to_string(*name)), named_scheme(*name, a.n)});
  }
  if (a.optimal_at) {
    // fitted on its own seed so none of the evaluation blocks are reused
    const VarianceBounds fit = min_variance_bounds(a.n, *a.optimal_at, a.block, derive_seed(a.common.seed, 0xD1),
                                                   sampling, opt);
    schemes.push_back({"optimal_xi_" + io::format_double(*a.optimal_at), to_elemental_weights(fit.weights.r, a.n)});
  }
  Run run("experiment efficiency", out);
  run.set_seed(a.common.seed);
  run.config() = a.common.echo();
  run.config()["n"] = a.n;
  run.config()["xi"] = xis;
  run.config()["block"] = a.block;
  run.config()["schemes"] = a.schemes;
  if (a.optimal_at) run.config()["optimal_at"] = *a.optimal_at;
  const auto rows = relative_efficiency(schemes, a.n, xis, a.block, a.common.seed, sampling, opt);
  std::vector<SummaryRow> summaries;
  for (const auto& r : rows) summaries.push_back(r.held_out);
  std::ostringstream csv, eff;
  io::write_summary_csv(csv, summaries);
  io::write_efficiency_csv(eff, rows);
  run.emit(a.common.out, csv.str());
  std::string eff_path = a.efficiency_out;
  if (eff_path.empty() && !a.common.out.empty()) eff_path = a.common.out + ".efficiency.csv";
  if (eff_path.empty()) out << '\n';
  run.emit(eff_path, eff.str());
  run.write_manifest();
  return kExitOk;
}

struct ConsistencyArgs {
  CommonExperimentArgs common;
  std::string scheme = "linearly-rising";
  std::string xi_grid;
  std::vector<double> xi;
  std::vector<std::size_t> n{20, 50, 100, 200, 500, 1000};
  std::size_t reps = 10000;
};

inline int cmd_consistency(const ConsistencyArgs& a, std::ostream& out) {
  const auto xis = xi_values(a.xi_grid, a.xi, "-3:3:7");
  const auto scheme = parse_scheme(a.scheme);
  if (!scheme || *scheme == SchemeName::Custom) throw UsageError("unknown --scheme '" + a.scheme + "'");
  for (auto n : a.n) {
    if (n < 3) throw UsageError("every --n must be at least 3");
  }
  if (a.reps < 1) throw UsageError("--reps must be positive");
  Run run("experiment consistency", out);
  run.set_seed(a.common.seed);
  run.config() = a.common.echo();
  run.config()["scheme"] = a.scheme;
  run.config()["xi"] = xis;
  run.config()["n"] = a.n;
  run.config()["reps"] = a.reps;
  const auto rows =
      consistency_study(*scheme, xis, a.n, a.reps, a.common.seed, a.common.sampling(), RunOptions{a.common.threads});
  std::ostringstream csv;
  io::write_consistency_csv(csv, rows);
  run.emit(a.common.out, csv.str());
  run.write_manifest();
  return kExitOk;
}

struct OptimalArgs {
  CommonExperimentArgs common;
  std::size_t n = 20;
  double xi = 0.0;
  std::size_t block = 8000;
};

inline int cmd_optimal(const OptimalArgs& a, std::ostream& out) {
  if (a.n < 3) throw UsageError("--n must be at least 3");
  if (a.block < elemental_count(a.n) + 2) {
    throw UsageError("--block must be at least " + std::to_string(elemental_count(a.n) + 2));
  }
  Run run("experiment optimal-weights", out);
  run.set_seed(a.common.seed);
  run.config() = a.common.echo();
  run.config()["n"] = a.n;
  run.config()["xi"] = a.xi;
  run.config()["block"] = a.block;
  const VarianceBounds b =
      min_variance_bounds(a.n, a.xi, a.block, a.common.seed, a.common.sampling(), RunOptions{a.common.threads});
  json doc = io::to_json(to_elemental_weights(b.weights.r, a.n));
  doc["xi"] = a.xi;
  doc["bounds"] = {{"lower", b.lower}, {"upper", b.upper}};
  doc["lagrange_multiplier"] = b.weights.lagrange_multiplier;
  doc["ridge"] = b.weights.ridge;
  run.emit(a.common.out, doc.dump(2) + "\n");
  run.write_manifest();
  return kExitOk;
}

// ---- dispatch -------------------------------------------------------------

inline constexpr const char* kSchemaHelp = R"(Output schemas (UTF-8, floats with 17 significant digits):
  sample                    rep,rank,value          (rank 1 = sample maximum)
  estimate                  rep,estimator,value     (failures: rep,error,<reason>)
  experiment bias|efficiency  n,xi,estimator,mean,bias,variance,rmse,stderr,reps
  experiment efficiency     + <out>.efficiency.csv: n,xi,scheme,efficiency,min_variance,lower,upper,scheme_variance
  experiment consistency    n,xi,estimator,mean,bias,variance,rmse,stderr,reps,axis   (axis = 1 - sqrt(2/n))
  experiment optimal-weights  weight-matrix JSON + "bounds": {"lower","upper"}
  verify                    certificate JSON
Every file written with --out gets a <out>.manifest.json.
Exit codes: 0 success, 1 verification/runtime failure, 2 usage error.)";

inline void add_common(CLI::App* app, CommonExperimentArgs& c) {
  app->add_option("--seed", c.seed, "Experiment seed");
  app->add_option("--threads", c.threads, "Worker threads (0 = all cores); output does not depend on it");
  app->add_option("--mu", c.mu, "GPD location");
  app->add_option("--sigma", c.sigma, "GPD scale");
  app->add_option("--origin", c.origin, "Sample coordinates: resolved (default) or natural");
  app->add_option("--out", c.out, "Output file (default stdout)");
}

/// Runs the CLI with the given arguments; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Elemental unbiased estimators of the Generalized Pareto tail parameter"};
  app.footer(kSchemaHelp);
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  SampleArgs sa;
  auto* sample_cmd = app.add_subcommand("sample", "Draw ordered GPD samples");
  sample_cmd->add_option("--n", sa.n, "Sample size")->required();
  sample_cmd->add_option("--xi", sa.xi, "Tail parameter")->required();
  sample_cmd->add_option("--mu", sa.mu, "Location");
  sample_cmd->add_option("--sigma", sa.sigma, "Scale (> 0)");
  sample_cmd->add_option("--reps", sa.reps, "Number of samples");
  sample_cmd->add_option("--seed", sa.seed, "Seed");
  sample_cmd->add_option("--out", sa.out, "Output CSV (default stdout)");

  EstimateArgs ea;
  auto* est_cmd = app.add_subcommand("estimate", "Estimate the tail parameter of data samples");
  est_cmd->add_option("--data", ea.data, "CSV: rep,rank,value or one value per line")->required();
  est_cmd->add_option("--scheme", ea.scheme, "equal-weight|top-row|quadratic-gap|linearly-rising (default)");
  est_cmd->add_option("--weights", ea.weights, "Weight-matrix JSON (elemental or spacing)");
  est_cmd->add_flag("--all-elementals", ea.all_elementals, "Also emit every elemental estimate");
  est_cmd->add_flag("--baselines", ea.baselines, "Also emit Pickands and Hill estimates");
  est_cmd->add_option("--pickands-k", ea.pickands_k, "Pickands k (default n/4)");
  est_cmd->add_option("--hill-k", ea.hill_k, "Hill k (default n/4)");
  est_cmd->add_option("--out", ea.out, "Output CSV (default stdout)");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Analytic unbiasedness certificate");
  verify_cmd->add_option("--n", va.n, "Certify every elemental and named scheme for this n");
  verify_cmd->add_option("--weights", va.weights, "Certify this weight-matrix JSON");
  verify_cmd->add_option("--out", va.out, "Output JSON (default stdout)");

  auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo experiments");
  exp_cmd->require_subcommand(1);

  BiasArgs ba;
  auto* bias_cmd = exp_cmd->add_subcommand("bias", "Mean of every elemental over a xi grid");
  add_common(bias_cmd, ba.common);
  bias_cmd->add_option("--n", ba.n, "Sample sizes")->delimiter(',');
  bias_cmd->add_option("--xi-grid", ba.xi_grid, "lo:hi:count (default -10:10:21)");
  bias_cmd->add_option("--xi", ba.xi, "Explicit xi values")->delimiter(',');
  bias_cmd->add_option("--reps", ba.reps, "Replications per grid point");
  bias_cmd->add_option("--scheme", ba.scheme, "Add a row for this combination");
  bias_cmd->add_flag("--baselines", ba.baselines, "Add Pickands and Hill rows");

  EfficiencyArgs fa;
  auto* eff_cmd = exp_cmd->add_subcommand("efficiency", "Relative efficiency against the optimal combination");
  add_common(eff_cmd, fa.common);
  eff_cmd->add_option("--n", fa.n, "Sample size");
  eff_cmd->add_option("--xi-grid", fa.xi_grid, "lo:hi:count (default -3:3:13)");
  eff_cmd->add_option("--xi", fa.xi, "Explicit xi values")->delimiter(',');
  eff_cmd->add_option("--block", fa.block, "Samples per block");
  eff_cmd->add_option("--schemes", fa.schemes, "Schemes to evaluate")->delimiter(',');
  eff_cmd->add_option("--optimal-at", fa.optimal_at, "Also evaluate the combination optimised at this xi");
  eff_cmd->add_option("--efficiency-out", fa.efficiency_out, "Efficiency table CSV");

  ConsistencyArgs ca;
  auto* cons_cmd = exp_cmd->add_subcommand("consistency", "RMSE against sample size");
  add_common(cons_cmd, ca.common);
  cons_cmd->add_option("--scheme", ca.scheme, "Combination (default linearly-rising)");
  cons_cmd->add_option("--xi-grid", ca.xi_grid, "lo:hi:count (default -3:3:7)");
  cons_cmd->add_option("--xi", ca.xi, "Explicit xi values")->delimiter(',');
  cons_cmd->add_option("--n", ca.n, "Sample sizes")->delimiter(',');
  cons_cmd->add_option("--reps", ca.reps, "Replications per grid point");

  OptimalArgs oa;
  auto* opt_cmd = exp_cmd->add_subcommand("optimal-weights", "Variance-minimising weights and bounds");
  add_common(opt_cmd, oa.common);
  opt_cmd->add_option("--n", oa.n, "Sample size");
  opt_cmd->add_option("--xi", oa.xi, "Tail parameter");
  opt_cmd->add_option("--block", oa.block, "Samples per block");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sample_cmd) return cmd_sample(sa, out);
    if (*est_cmd) return cmd_estimate(ea, out);
    if (*verify_cmd) return cmd_verify(va, out);
    if (*bias_cmd) return cmd_bias(ba, out);
    if (*eff_cmd) return cmd_efficiency(fa, out);
    if (*cons_cmd) return cmd_consistency(ca, out);
    if (*opt_cmd) return cmd_optimal(oa, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace elemental::cli
