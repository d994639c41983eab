#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedlab/dimensions.hpp"
#include "fedlab/orbits.hpp"

namespace fedlab {

inline constexpr const char* kExperiments[] = {"net",       "packing-dim", "orbit-count", "covering-curve",
                                               "delta-top", "orbit-dim",   "bounds"};

struct ExperimentConfig {
  std::string experiment;
  std::optional<std::string> target;
  std::vector<long long> ks;
  RealVector omegas;
  int degree_cap = 4;
  double epsilon = 1e-3;
  std::optional<double> R;  // defaults to the spectral radius of the target plus one
  std::size_t budget = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out_dir;  // empty: no files written
  std::string format = "json";
  std::optional<CurveMethod> method;
  Metric metric = Metric::hs;
  OrbitVariant variant = OrbitVariant::f_log_over_k2;
  Reduction reduction = Reduction::smallest_omega;
  std::vector<int> kpowers;
  double C = 1.0;
  double C1 = 1.0;
  // bounds experiment
  int m = 0;
  int n = 0;
  int t = 0;
  double delta = 0.0;
  double theta = 0.0;
  std::vector<int> sizes;

  /// `args` are the words after the program name: the experiment name, then
  /// key=value pairs. `config=FILE` loads key=value lines first; explicit
  /// pairs override them. `default_seed` is used when no seed key is given.
  /// Throws ConfigError naming the offending key.
  static ExperimentConfig from_args(std::span<const std::string> args, std::optional<std::string> default_seed);
  static ExperimentConfig from_pairs(const std::string& experiment, const std::map<std::string, std::string>& pairs);

  /// Canonical key=value form of every setting; enough to rerun.
  std::map<std::string, std::string> echo() const;
};

/// List grammar for omegas: comma-separated values, each a number, a
/// fraction p/q, or a geometric run b^-j..b^-J.
RealVector parse_omega_list(std::string_view text);
/// Comma-separated integers or inclusive ranges a..b.
std::vector<long long> parse_k_list(std::string_view text);

struct SummaryEntry {
  std::string quantity;
  std::optional<double> omega;
  std::optional<long long> k;
  double value = 0.0;
};

struct Report {
  std::map<std::string, std::string> config;
  std::optional<CoveringCurve> curve;
  std::vector<SummaryEntry> summary;
  /// Canonical JSON of the result payload; identical across reruns and
  /// worker counts for a fixed config.
  std::string payload_json;
  double wall_seconds = 0.0;
  std::size_t samples = 0;
  std::size_t flagged = 0;

  /// Full document: config echo, payload, provenance.
  std::string to_json() const;
  /// Summary as CSV: quantity,omega,k,value.
  std::string summary_csv() const;
};

/// Runs the named pipeline and, when out_dir is set, writes the report files.
/// Throws ConfigError, InfeasibleRequest or IoError.
Report run_experiment(const ExperimentConfig& config);

/// json: `<experiment>.json`; csv: `<experiment>_curve.csv` (when a curve
/// exists) and `<experiment>_summary.csv`. Returns written paths.
std::vector<std::string> emit(const Report& report, const std::string& experiment, const std::string& format,
                              const std::string& out_dir);

/// Process exit code for an exception thrown by the pipeline: 2 config,
/// 3 infeasible, 4 I/O, 1 otherwise.
int exit_code_for(const std::exception& e);

}  // namespace fedlab
