#include "fedlab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fedlab/error.hpp"
#include "fedlab/microstates.hpp"
#include "parse_util.hpp"

namespace fedlab {

using nlohmann::json;

RealVector parse_omega_list(std::string_view text) {
  RealVector out;
  for (auto item : detail::split(text, ',')) {
    item = detail::trim(item);
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(detail::parse_number(item, "omegas"));
      continue;
    }
    // b^-j..b^-J
    auto power = [](std::string_view s, double& base) {
      const auto caret = s.find("^-");
      if (caret == std::string_view::npos) throw ConfigError("omegas: expected b^-j in '" + std::string(s) + "'");
      base = detail::parse_number(s.substr(0, caret), "omegas");
      return detail::parse_integer(s.substr(caret + 2), "omegas");
    };
    double b1 = 0.0;
    double b2 = 0.0;
    const long long j1 = power(detail::trim(item.substr(0, dots)), b1);
    const long long j2 = power(detail::trim(item.substr(dots + 2)), b2);
    if (b1 != b2 || !(b1 > 1.0)) throw ConfigError("omegas: geometric run needs one common base > 1");
    if (j2 < j1 || j2 - j1 > 10000) throw ConfigError("omegas: geometric run b^-j..b^-J needs j <= J");
    for (long long j = j1; j <= j2; ++j) out.push_back(std::pow(b1, -static_cast<double>(j)));
  }
  if (out.empty()) throw ConfigError("omegas: empty list");
  return out;
}

std::vector<long long> parse_k_list(std::string_view text) {
  std::vector<long long> out;
  for (auto item : detail::split(text, ',')) {
    item = detail::trim(item);
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(detail::parse_integer(item, "ks"));
      continue;
    }
    const long long a = detail::parse_integer(detail::trim(item.substr(0, dots)), "ks");
    const long long b = detail::parse_integer(detail::trim(item.substr(dots + 2)), "ks");
    if (b < a || b - a > 100000) throw ConfigError("ks: range a..b needs a <= b");
    for (long long k = a; k <= b; ++k) out.push_back(k);
  }
  if (out.empty()) throw ConfigError("ks: empty list");
  return out;
}

namespace {

std::vector<int> parse_int_list(std::string_view text, std::string_view key) {
  std::vector<int> out;
  for (auto item : detail::split(text, ',')) {
    out.push_back(static_cast<int>(detail::parse_integer(detail::trim(item), key)));
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (const auto& x : v) {
    if (!out.empty()) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += detail::format_number(x);
    } else {
      out += std::to_string(x);
    }
  }
  return out;
}

std::uint64_t parse_seed(std::string_view s, std::string_view context) {
  const long long v = detail::parse_integer(s, context);
  if (v < 0) throw ConfigError(std::string(context) + ": seed must be >= 0");
  return static_cast<std::uint64_t>(v);
}

bool known_experiment(std::string_view name) {
  return std::any_of(std::begin(kExperiments), std::end(kExperiments), [&](const char* e) { return name == e; });
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("config: cannot read '" + path + "'");
  std::map<std::string, std::string> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config " + path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    pairs[std::string(detail::trim(body.substr(0, eq)))] = std::string(detail::trim(body.substr(eq + 1)));
  }
  return pairs;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_args(std::span<const std::string> args,
                                             std::optional<std::string> default_seed) {
  std::string experiment;
  std::map<std::string, std::string> flags;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto eq = args[i].find('=');
    if (eq == std::string::npos) {
      if (i != 0) throw ConfigError("argument '" + args[i] + "': expected key=value");
      experiment = args[i];
      continue;
    }
    flags[args[i].substr(0, eq)] = args[i].substr(eq + 1);
  }
  std::map<std::string, std::string> pairs;
  if (auto it = flags.find("config"); it != flags.end()) {
    pairs = read_config_file(it->second);
    flags.erase(it);
  }
  for (auto& [k, v] : flags) pairs[k] = v;
  if (auto it = pairs.find("experiment"); it != pairs.end()) {
    if (experiment.empty()) experiment = it->second;
    pairs.erase(it);
  }
  if (!pairs.count("seed") && default_seed && !default_seed->empty()) pairs["seed"] = *default_seed;
  return from_pairs(experiment, pairs);
}

ExperimentConfig ExperimentConfig::from_pairs(const std::string& experiment,
                                              const std::map<std::string, std::string>& pairs) {
  if (experiment.empty()) throw ConfigError("experiment: missing experiment name");
  if (!known_experiment(experiment)) throw ConfigError("experiment: unknown experiment '" + experiment + "'");
  ExperimentConfig c;
  c.experiment = experiment;

  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"target",
       [&](const std::string& v) {
         (void)parse_spectrum(v);
         c.target = v;
       }},
      {"ks", [&](const std::string& v) { c.ks = parse_k_list(v); }},
      {"omegas", [&](const std::string& v) { c.omegas = parse_omega_list(v); }},
      {"degree_cap", [&](const std::string& v) { c.degree_cap = static_cast<int>(detail::parse_integer(v, "")); }},
      {"epsilon", [&](const std::string& v) { c.epsilon = detail::parse_number(v, ""); }},
      {"R", [&](const std::string& v) { c.R = detail::parse_number(v, ""); }},
      {"budget",
       [&](const std::string& v) {
         const long long b = detail::parse_integer(v, "");
         if (b < 1) throw ConfigError("must be >= 1");
         c.budget = static_cast<std::size_t>(b);
       }},
      {"seed", [&](const std::string& v) { c.seed = parse_seed(v, "seed"); }},
      {"workers",
       [&](const std::string& v) {
         const long long w = detail::parse_integer(v, "");
         if (w < 1 || w > 1024) throw ConfigError("must be in [1, 1024]");
         c.workers = static_cast<unsigned>(w);
       }},
      {"out_dir", [&](const std::string& v) { c.out_dir = v; }},
      {"format",
       [&](const std::string& v) {
         if (v != "csv" && v != "json") throw ConfigError("expected csv or json");
         c.format = v;
       }},
      {"method", [&](const std::string& v) { c.method = parse_curve_method(v); }},
      {"metric", [&](const std::string& v) { c.metric = parse_metric(v); }},
      {"variant", [&](const std::string& v) { c.variant = parse_orbit_variant(v); }},
      {"reduction", [&](const std::string& v) { c.reduction = parse_reduction(v); }},
      {"kpowers", [&](const std::string& v) { c.kpowers = parse_int_list(v, ""); }},
      {"C", [&](const std::string& v) { c.C = detail::parse_number(v, ""); }},
      {"C1", [&](const std::string& v) { c.C1 = detail::parse_number(v, ""); }},
      {"m", [&](const std::string& v) { c.m = static_cast<int>(detail::parse_integer(v, "")); }},
      {"n", [&](const std::string& v) { c.n = static_cast<int>(detail::parse_integer(v, "")); }},
      {"t", [&](const std::string& v) { c.t = static_cast<int>(detail::parse_integer(v, "")); }},
      {"delta", [&](const std::string& v) { c.delta = detail::parse_number(v, ""); }},
      {"theta", [&](const std::string& v) { c.theta = detail::parse_number(v, ""); }},
      {"sizes", [&](const std::string& v) { c.sizes = parse_int_list(v, ""); }},
  };
  for (const auto& [key, value] : pairs) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key '" + key + "'");
    try {
      it->second(value);
    } catch (const ConfigError& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
  }
  if (!(c.epsilon > 0.0)) throw ConfigError("key 'epsilon': must be > 0");
  if (c.degree_cap < 1) throw ConfigError("key 'degree_cap': must be >= 1");
  if (c.target && c.R) {
    const double radius = parse_spectrum(*c.target).spectral_radius();
    if (!(*c.R > radius)) {
      throw ConfigError("key 'R': must exceed the spectral radius " + detail::format_number(radius) + " of the target");
    }
  }
  return c;
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  std::map<std::string, std::string> e;
  e["experiment"] = experiment;
  if (target) e["target"] = *target;
  if (!ks.empty()) e["ks"] = join(ks);
  if (!omegas.empty()) e["omegas"] = join(omegas);
  e["degree_cap"] = std::to_string(degree_cap);
  e["epsilon"] = detail::format_number(epsilon);
  if (R) e["R"] = detail::format_number(*R);
  e["budget"] = std::to_string(budget);
  e["seed"] = std::to_string(seed);
  e["workers"] = std::to_string(workers);
  if (!out_dir.empty()) e["out_dir"] = out_dir;
  e["format"] = format;
  if (method) e["method"] = to_string(*method);
  e["metric"] = to_string(metric);
  e["variant"] = variant == OrbitVariant::f_log_over_k2 ? "f_log_over_k2" : "f_loglog";
  e["reduction"] = to_string(reduction);
  if (!kpowers.empty()) e["kpowers"] = join(kpowers);
  e["C"] = detail::format_number(C);
  e["C1"] = detail::format_number(C1);
  if (m) e["m"] = std::to_string(m);
  if (n) e["n"] = std::to_string(n);
  if (t) e["t"] = std::to_string(t);
  if (delta != 0.0) e["delta"] = detail::format_number(delta);
  if (theta != 0.0) e["theta"] = detail::format_number(theta);
  if (!sizes.empty()) e["sizes"] = join(sizes);
  return e;
}

namespace {

json to_json(const CurveRow& r) {
  return {{"k", r.k},           {"omega", r.omega},   {"log_lower", r.log_lower}, {"log_upper", r.log_upper},
          {"method", to_string(r.method)}, {"seed", r.seed}, {"budget", r.budget}};
}

json to_json(const DimensionEstimate& e) {
  json per = json::array();
  for (const auto& p : e.per_omega) {
    json item = {{"omega", p.omega}, {"value", p.value}};
    if (p.k) item["k"] = p.k;
    per.push_back(item);
  }
  return {{"variant", to_string(e.variant)},
          {"value", e.value},
          {"reduction", to_string(e.reduction)},
          {"skipped_rows", e.skipped_rows},
          {"per_omega", per}};
}

void add_estimate(Report& report, json& payload, const DimensionEstimate& e) {
  payload["estimates"].push_back(to_json(e));
  report.summary.push_back({to_string(e.variant), std::nullopt, std::nullopt, e.value});
  for (const auto& p : e.per_omega) {
    report.summary.push_back({to_string(e.variant) + "_per_omega", p.omega,
                              p.k ? std::optional<long long>(p.k) : std::nullopt, p.value});
  }
}

SpectrumSpec require_target(const ExperimentConfig& c) {
  if (!c.target) throw ConfigError("key 'target': required for experiment '" + c.experiment + "'");
  return parse_spectrum(*c.target);
}

const RealVector& require_omegas(const ExperimentConfig& c, bool unit_interval) {
  if (c.omegas.empty()) throw ConfigError("key 'omegas': required for experiment '" + c.experiment + "'");
  for (double w : c.omegas) {
    if (!(w > 0.0)) throw ConfigError("key 'omegas': values must be > 0");
    if (unit_interval && !(w < 1.0)) throw ConfigError("key 'omegas': values must lie in (0, 1) for " + c.experiment);
  }
  return c.omegas;
}

CurveMethod default_method(const ExperimentConfig& c, const SpectrumSpec& k) {
  if (c.method) return *c.method;
  if (c.experiment == "delta-top") return k.is_finite() ? CurveMethod::analytic_bound : CurveMethod::monte_carlo;
  return k.is_finite() ? CurveMethod::exact_orbit : CurveMethod::net_orbit;
}

CurveBuild build_curve(const ExperimentConfig& c, const SpectrumSpec& k, CurveMethod method, json& payload) {
  CurveRequest req;
  req.target = k;
  req.ks = c.ks;
  req.omegas = c.omegas;
  req.method = method;
  req.k_powers = c.kpowers;
  if (method == CurveMethod::net_orbit && c.ks.empty() && c.kpowers.empty()) req.k_powers = {2, 3, 4};
  if (req.ks.empty() && req.k_powers.empty()) throw ConfigError("key 'ks': required for experiment '" + c.experiment + "'");
  req.budget = c.budget;
  req.seed = c.seed;
  req.workers = c.workers;
  req.metric = c.metric;
  req.C = c.C;
  req.C1 = c.C1;
  payload["method"] = to_string(method);
  if (method == CurveMethod::monte_carlo) {
    // The sampled orbits must lie in the microstate space they stand for.
    const double R = c.R.value_or(k.spectral_radius() + 1.0);
    json checks = json::array();
    for (long long kk : c.ks) {
      const MicrostateParams params(R, c.epsilon, static_cast<int>(kk), default_polynomial_family(1, c.degree_cap), k);
      const MembershipReport m = is_microstate(curve_model(k, kk), params);
      const double slack = m.slacks.empty() ? 0.0 : *std::max_element(m.slacks.begin(), m.slacks.end());
      checks.push_back({{"k", kk}, {"member", m.member}, {"max_slack", slack}});
    }
    payload["model_checks"] = checks;
    payload["R"] = R;
  }
  CurveBuild built = build_covering_curve(req);
  json rows = json::array();
  for (const auto& r : built.curve.rows()) rows.push_back(to_json(r));
  payload["rows"] = rows;
  return built;
}

void run_net(const ExperimentConfig& c, Report& report, json& payload) {
  const SpectrumSpec k = require_target(c);
  json nets = json::array();
  for (double w : require_omegas(c, false)) {
    const SpectralNet net = separated_net(k, w);
    nets.push_back({{"omega", w}, {"size", net.points.size()}, {"points", net.points}});
    report.summary.push_back({"net_size", w, std::nullopt, static_cast<double>(net.points.size())});
  }
  payload["nets"] = nets;
}

void run_packing_dim(const ExperimentConfig& c, Report& report, json& payload) {
  const SpectrumSpec k = require_target(c);
  const RealVector& omegas = require_omegas(c, true);
  json counts = json::array();
  for (double w : omegas) {
    const auto p = packing_number(k, w);
    counts.push_back({{"omega", w}, {"packing_number", p}});
    report.summary.push_back({"packing_number", w, std::nullopt, static_cast<double>(p)});
  }
  payload["packing_numbers"] = counts;
  add_estimate(report, payload, fit_packing_dimension(k, omegas));
}

void run_orbit_count(const ExperimentConfig& c, Report& report, json& payload) {
  const SpectrumSpec k = require_target(c);
  if (!k.is_finite()) throw InfeasibleRequest("orbit-count needs a finite spectrum; " + k.to_string() + " is infinite");
  if (c.ks.empty()) throw ConfigError("key 'ks': required for experiment 'orbit-count'");
  const RealVector sigma = k.finite_points();
  CoveringCurve curve;
  json counts = json::array();
  for (long long kk : c.ks) {
    if (kk < 1 || kk > 1'000'000'000) throw ConfigError("key 'ks': values must lie in [1, 1e9]");
    for (double w : require_omegas(c, false)) {
      const double log_count = log_exact_orbit_covering_finite_spectrum(sigma, static_cast<int>(kk), w);
      json item = {{"k", kk}, {"omega", w}, {"log_count", log_count}};
      try {
        const auto count = exact_orbit_covering_finite_spectrum(sigma, static_cast<int>(kk), w);
        item["count"] = count;
        report.summary.push_back({"orbit_count", w, kk, static_cast<double>(count)});
      } catch (const InfeasibleRequest&) {
        item["count"] = nullptr;  // beyond 64 bits; log_count stays exact to rounding
        report.summary.push_back({"log_orbit_count", w, kk, log_count});
      }
      counts.push_back(item);
      curve.add({kk, w, log_count, log_count, CurveMethod::exact_orbit, 0, 0});
    }
  }
  payload["counts"] = counts;
  report.curve = curve;
}

void run_covering_curve(const ExperimentConfig& c, Report& report, json& payload) {
  const SpectrumSpec k = require_target(c);
  require_omegas(c, false);
  CurveBuild built = build_curve(c, k, default_method(c, k), payload);
  report.samples = built.samples;
  report.flagged = built.flagged;
  report.curve = std::move(built.curve);
}

void run_delta_top(const ExperimentConfig& c, Report& report, json& payload) {
  const SpectrumSpec k = require_target(c);
  require_omegas(c, true);
  const CurveMethod method = default_method(c, k);
  CurveBuild built = build_curve(c, k, method, payload);
  const DimensionVariant variant = method == CurveMethod::monte_carlo && c.metric == Metric::hs
                                       ? DimensionVariant::delta_top_tilde
                                       : DimensionVariant::delta_top;
  add_estimate(report, payload, fit_delta_top(built.curve, variant, c.reduction));
  const double formula = formula_delta_top_one_variable(k);
  payload["formula_delta_top"] = formula;
  report.summary.push_back({"formula_delta_top", std::nullopt, std::nullopt, formula});
  report.samples = built.samples;
  report.flagged = built.flagged;
  report.curve = std::move(built.curve);
}

void run_orbit_dim(const ExperimentConfig& c, Report& report, json& payload) {
  const SpectrumSpec k = require_target(c);
  require_omegas(c, true);
  CurveBuild built = build_curve(c, k, default_method(c, k), payload);
  add_estimate(report, payload, fit_orbit_dimension(built.curve, c.variant, c.reduction));
  report.samples = built.samples;
  report.flagged = built.flagged;
  report.curve = std::move(built.curve);
}

void run_bounds(const ExperimentConfig& c, Report& report, json& payload) {
  const bool volume = c.m || c.n || c.t;
  if (!volume && c.sizes.empty()) throw ConfigError("bounds: give m, n, t (volume bound) and/or sizes (partition bound)");
  if (volume) {
    BoundParams p;
    p.m = c.m;
    p.n = c.n;
    p.t = c.t;
    p.k = c.m * c.t + c.n - c.m;
    p.delta = c.delta;
    p.theta = c.theta;
    p.C = c.C;
    p.C1 = c.C1;
    const double exponent = volume_bound_exponent(p);
    const double value = volume_lower_bound_log(p);
    payload["volume_bound"] = {{"k", p.k}, {"exponent", exponent}, {"log_bound", value}};
    report.summary.push_back({"volume_bound_exponent", std::nullopt, p.k, exponent});
    report.summary.push_back({"volume_lower_bound_log", std::nullopt, p.k, value});
  }
  if (!c.sizes.empty()) {
    int k = 0;
    for (int s : c.sizes) k += s;
    const double exponent = partition_bound_exponent(c.sizes);
    const double value = partition_lower_bound_log(c.sizes, k, c.delta, c.theta, c.C, c.C1);
    payload["partition_bound"] = {{"k", k}, {"exponent", exponent}, {"log_bound", value}};
    report.summary.push_back({"partition_bound_exponent", std::nullopt, k, exponent});
    report.summary.push_back({"partition_lower_bound_log", std::nullopt, k, value});
  }
}

std::string cell(std::optional<double> v) { return v ? detail::format_number(*v) : ""; }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string Report::to_json() const {
  json doc;
  doc["config"] = config;
  doc["payload"] = json::parse(payload_json);
  doc["provenance"] = {{"version", FEDLAB_VERSION},
                       {"wall_seconds", wall_seconds},
                       {"samples", samples},
                       {"flagged", flagged},
                       {"flag_rate", samples ? static_cast<double>(flagged) / static_cast<double>(samples) : 0.0}};
  return doc.dump(2) + "\n";
}

std::string Report::summary_csv() const {
  std::string out = "quantity,omega,k,value\n";
  for (const auto& s : summary) {
    out += s.quantity + ',' + cell(s.omega) + ',' + (s.k ? std::to_string(*s.k) : "") + ',' +
           detail::format_number(s.value) + '\n';
  }
  return out;
}

Report run_experiment(const ExperimentConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.config = c.echo();
  json payload = json::object();
  payload["experiment"] = c.experiment;
  payload["estimates"] = json::array();

  const std::map<std::string, void (*)(const ExperimentConfig&, Report&, json&)> pipelines = {
      {"net", run_net},
      {"packing-dim", run_packing_dim},
      {"orbit-count", run_orbit_count},
      {"covering-curve", run_covering_curve},
      {"delta-top", run_delta_top},
      {"orbit-dim", run_orbit_dim},
      {"bounds", run_bounds},
  };
  auto it = pipelines.find(c.experiment);
  if (it == pipelines.end()) throw ConfigError("experiment: unknown experiment '" + c.experiment + "'");
  it->second(c, report, payload);
  if (payload.contains("method") && !report.config.count("method")) {
    report.config["method"] = payload["method"].get<std::string>();
  }
  if (report.curve && !payload.contains("rows")) {
    json rows = json::array();
    for (const auto& r : report.curve->rows()) rows.push_back(to_json(r));
    payload["rows"] = rows;
  }
  if (!payload.contains("rows")) payload["rows"] = json::array();
  report.payload_json = payload.dump();
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!c.out_dir.empty()) emit(report, c.experiment, c.format, c.out_dir);
  return report;
}

std::vector<std::string> emit(const Report& report, const std::string& experiment, const std::string& format,
                              const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) throw IoError("cannot create output directory '" + out_dir + "'");
  std::vector<std::string> written;
  const fs::path dir(out_dir);
  if (format == "json") {
    const fs::path p = dir / (experiment + ".json");
    write_file(p, report.to_json());
    written.push_back(p.string());
    return written;
  }
  if (format != "csv") throw ConfigError("key 'format': expected csv or json");
  const fs::path curve_path = dir / (experiment + "_curve.csv");
  write_file(curve_path, report.curve ? report.curve->to_csv() : CoveringCurve{}.to_csv());
  written.push_back(curve_path.string());
  const fs::path summary_path = dir / (experiment + "_summary.csv");
  write_file(summary_path, report.summary_csv());
  written.push_back(summary_path.string());
  return written;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InfeasibleRequest*>(&e)) return 3;
  if (dynamic_cast<const IoError*>(&e)) return 4;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return 2;
  return 1;
}

}  // namespace fedlab
