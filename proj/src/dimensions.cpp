#include "fedlab/dimensions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fedlab/error.hpp"
#include "fedlab/microstates.hpp"
#include "parse_util.hpp"

namespace fedlab {

CurveMethod parse_curve_method(std::string_view text) {
  if (text == "exact-orbit") return CurveMethod::exact_orbit;
  if (text == "monte-carlo") return CurveMethod::monte_carlo;
  if (text == "analytic-bound") return CurveMethod::analytic_bound;
  if (text == "net-orbit") return CurveMethod::net_orbit;
  throw ConfigError("method: expected exact-orbit, monte-carlo, analytic-bound or net-orbit, got '" +
                    std::string(text) + "'");
}

std::string to_string(CurveMethod m) {
  switch (m) {
    case CurveMethod::exact_orbit:
      return "exact-orbit";
    case CurveMethod::monte_carlo:
      return "monte-carlo";
    case CurveMethod::analytic_bound:
      return "analytic-bound";
    case CurveMethod::net_orbit:
      return "net-orbit";
  }
  return "?";
}

void CoveringCurve::add(const CurveRow& row) {
  if (row.log_lower > row.log_upper) throw ConfigError("covering curve: log_lower exceeds log_upper");
  for (const auto& r : rows_) {
    if (r.k == row.k && r.omega == row.omega && r.method == row.method) {
      throw ConfigError("covering curve: duplicate row for k=" + std::to_string(row.k) +
                        " omega=" + detail::format_number(row.omega));
    }
  }
  rows_.push_back(row);
}

std::string CoveringCurve::to_csv() const {
  std::string out = "k,omega,log_lower,log_upper,method,seed,budget\n";
  for (const auto& r : rows_) {
    out += std::to_string(r.k) + ',' + detail::format_number(r.omega) + ',' + detail::format_number(r.log_lower) +
           ',' + detail::format_number(r.log_upper) + ',' + to_string(r.method) + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.budget) + '\n';
  }
  return out;
}

HermitianMatrix curve_model(const SpectrumSpec& target, long long k) {
  if (k < 1) throw ConfigError("curve model: k must be >= 1");
  if (target.is_finite()) {
    const RealVector sigma = target.finite_points();
    if (k < static_cast<long long>(sigma.size())) {
      throw InfeasibleRequest("curve model: k=" + std::to_string(k) + " is smaller than the " +
                              std::to_string(sigma.size()) + " spectral values");
    }
    return exact_microstate(sigma, MultiplicityVector::balanced(static_cast<int>(k), static_cast<int>(sigma.size())));
  }
  const RealVector pts = discretize(target);
  RealVector diag;
  for (long long i = 0; i < k; ++i) {
    const auto idx = k == 1 ? 0 : static_cast<std::size_t>(i * static_cast<long long>(pts.size() - 1) / (k - 1));
    diag.push_back(pts[idx]);
  }
  return HermitianMatrix::diagonal(diag);
}

namespace {

int checked_int(long long k) {
  if (k < 1 || k > 1'000'000'000) throw ConfigError("k=" + std::to_string(k) + " is outside [1, 1e9]");
  return static_cast<int>(k);
}

// Largest m <= n with k = m t + n - m for an integer t >= 1.
BoundParams bound_params_for(const RealVector& sigma, long long k, double omega, double C, double C1) {
  const int n = static_cast<int>(sigma.size());
  if (n < 2) throw InfeasibleRequest("analytic-bound: needs at least two spectral values");
  if (k < n) throw InfeasibleRequest("analytic-bound: k is smaller than the number of spectral values");
  BoundParams p;
  p.k = checked_int(k);
  p.n = n;
  for (int m = n; m >= 1; --m) {
    if ((k - n + m) % m == 0) {
      p.m = m;
      p.t = static_cast<int>((k - n + m) / m);
      break;
    }
  }
  double gap = sigma[1] - sigma[0];
  for (std::size_t i = 2; i < sigma.size(); ++i) gap = std::min(gap, sigma[i] - sigma[i - 1]);
  p.theta = gap;
  p.delta = 2.0 * omega;
  p.C = C;
  p.C1 = C1;
  return p;
}

std::vector<long long> sorted_unique(std::vector<long long> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

CurveBuild build_covering_curve(const CurveRequest& req) {
  if (req.omegas.empty()) throw ConfigError("covering curve: omegas is empty");
  if (req.ks.empty() && req.k_powers.empty()) throw ConfigError("covering curve: ks is empty");
  for (double w : req.omegas) {
    if (!(w > 0.0)) throw ConfigError("covering curve: omegas must be > 0");
  }
  for (long long k : req.ks) checked_int(k);
  if (!req.k_powers.empty() && req.method != CurveMethod::net_orbit) {
    throw ConfigError("covering curve: kpowers is only supported with method=net-orbit");
  }

  CurveBuild out;
  const std::vector<long long> ks = sorted_unique(req.ks);
  RealVector omegas = req.omegas;
  std::sort(omegas.begin(), omegas.end(), std::greater<>());

  switch (req.method) {
    case CurveMethod::exact_orbit: {
      if (!req.target.is_finite()) {
        throw InfeasibleRequest("exact-orbit needs a finite spectrum; " + req.target.to_string() + " is infinite");
      }
      const RealVector sigma = req.target.finite_points();
      for (long long k : ks) {
        for (double w : omegas) {
          const double v = log_exact_orbit_covering_finite_spectrum(sigma, checked_int(k), w);
          out.curve.add({k, w, v, v, req.method, 0, 0});
        }
      }
      break;
    }
    case CurveMethod::analytic_bound: {
      if (!req.target.is_finite()) {
        throw InfeasibleRequest("analytic-bound needs a finite spectrum; " + req.target.to_string() + " is infinite");
      }
      const RealVector sigma = req.target.finite_points();
      for (long long k : ks) {
        for (double w : omegas) {
          const double v = volume_lower_bound_log(bound_params_for(sigma, k, w, req.C, req.C1));
          out.curve.add({k, w, v, v, req.method, 0, 0});
        }
      }
      break;
    }
    case CurveMethod::net_orbit: {
      for (double w : omegas) {
        const auto m = static_cast<long long>(packing_number(req.target, w));
        std::vector<long long> grid = ks;
        if (!req.k_powers.empty()) {
          grid.clear();
          for (int p : req.k_powers) {
            if (p < 1) throw ConfigError("kpowers: exponents must be >= 1");
            const double k = std::pow(static_cast<double>(m), p);
            if (k > 1e9) throw InfeasibleRequest("kpowers: m(omega)^" + std::to_string(p) + " exceeds 1e9");
            grid.push_back(std::max(1LL, std::llround(k)));
          }
          grid = sorted_unique(grid);
        }
        for (long long k : grid) {
          if (k < m) {
            throw InfeasibleRequest("net-orbit: k=" + std::to_string(k) + " is smaller than the net size " +
                                    std::to_string(m) + " at omega=" + detail::format_number(w));
          }
          const double v = log_binomial(static_cast<double>(k - 1), static_cast<double>(m - 1));
          out.curve.add({k, w, v, v, req.method, 0, 0});
        }
      }
      break;
    }
    case CurveMethod::monte_carlo: {
      for (long long k : ks) {
        OrbitPackingRequest pr;
        pr.model = curve_model(req.target, k);
        pr.omegas = omegas;
        pr.metric = req.metric;
        pr.budget = req.budget;
        pr.seed = req.seed;
        pr.workers = req.workers;
        if (req.target.is_finite()) {
          pr.bucket_net = req.target.finite_points();
          pr.bucket_omega = omegas.back();
        }
        const OrbitPackingResult res = monte_carlo_orbit_packing(pr);
        out.samples += res.samples;
        out.flagged += res.flagged;
        for (std::size_t i = 0; i < omegas.size(); ++i) {
          out.curve.add({k, omegas[i], std::log(static_cast<double>(res.packing[i])),
                         std::log(static_cast<double>(res.covering_half[i])), req.method, req.seed, req.budget});
        }
      }
      break;
    }
  }
  return out;
}

std::string to_string(DimensionVariant v) {
  switch (v) {
    case DimensionVariant::delta_top:
      return "delta_top";
    case DimensionVariant::delta_top_tilde:
      return "delta_top_tilde";
    case DimensionVariant::orbit_f_log_over_k2:
      return "orbit_f_log_over_k2";
    case DimensionVariant::orbit_f_loglog:
      return "orbit_f_loglog";
    case DimensionVariant::packing_dim:
      return "packing_dim";
  }
  return "?";
}

Reduction parse_reduction(std::string_view text) {
  if (text == "smallest-omega") return Reduction::smallest_omega;
  if (text == "tail-max") return Reduction::tail_max;
  throw ConfigError("reduction: expected smallest-omega or tail-max, got '" + std::string(text) + "'");
}

std::string to_string(Reduction r) { return r == Reduction::smallest_omega ? "smallest-omega" : "tail-max"; }

OrbitVariant parse_orbit_variant(std::string_view text) {
  if (text == "f_log_over_k2") return OrbitVariant::f_log_over_k2;
  if (text == "f_loglog") return OrbitVariant::f_loglog;
  throw ConfigError("variant: expected f_log_over_k2 or f_loglog, got '" + std::string(text) + "'");
}

namespace {

double reduce(const std::vector<OmegaValue>& per_omega, Reduction reduction) {
  if (reduction == Reduction::smallest_omega) return per_omega.front().value;
  const std::size_t tail = (per_omega.size() + 1) / 2;
  double best = per_omega.front().value;
  for (std::size_t i = 1; i < tail; ++i) best = std::max(best, per_omega[i].value);
  return best;
}

// Max over k of stat(row) per omega; rows for which stat returns nullopt are
// counted as skipped.
template <class Stat>
DimensionEstimate per_omega_max(const CoveringCurve& curve, DimensionVariant variant, Reduction reduction,
                                Stat&& stat) {
  if (curve.empty()) throw ConfigError("dimension fit: empty curve");
  DimensionEstimate est;
  est.variant = variant;
  est.reduction = reduction;
  std::map<double, OmegaValue> best;
  for (const auto& r : curve.rows()) {
    if (!(r.omega > 0.0) || !(r.omega < 1.0)) {
      throw ConfigError("dimension fit: omega=" + detail::format_number(r.omega) + " is outside (0, 1)");
    }
    const std::optional<double> v = stat(r);
    if (!v) {
      ++est.skipped_rows;
      continue;
    }
    auto [it, inserted] = best.try_emplace(r.omega, OmegaValue{r.omega, *v, r.k});
    if (!inserted && *v > it->second.value) it->second = {r.omega, *v, r.k};
  }
  if (best.empty()) throw ConfigError("dimension fit: every row was skipped");
  for (const auto& [w, v] : best) est.per_omega.push_back(v);
  est.value = reduce(est.per_omega, reduction);
  return est;
}

}  // namespace

DimensionEstimate fit_delta_top(const CoveringCurve& curve, DimensionVariant variant, Reduction reduction) {
  return per_omega_max(curve, variant, reduction, [](const CurveRow& r) -> std::optional<double> {
    const double k = static_cast<double>(r.k);
    return r.log_lower / (-k * k * std::log(r.omega));
  });
}

DimensionEstimate fit_orbit_dimension(const CoveringCurve& curve, OrbitVariant variant, Reduction reduction) {
  if (variant == OrbitVariant::f_log_over_k2) {
    return per_omega_max(curve, DimensionVariant::orbit_f_log_over_k2, reduction,
                         [](const CurveRow& r) -> std::optional<double> {
                           const double k = static_cast<double>(r.k);
                           return r.log_lower / (-k * k * std::log(r.omega));
                         });
  }
  return per_omega_max(curve, DimensionVariant::orbit_f_loglog, reduction,
                       [](const CurveRow& r) -> std::optional<double> {
                         // log s / log k must be positive: s >= 2 and k >= 2.
                         if (r.k < 2 || !(r.log_lower > 0.0)) return std::nullopt;
                         const double ratio = r.log_lower / std::log(static_cast<double>(r.k));
                         return std::log(ratio) / -std::log(r.omega);
                       });
}

DimensionEstimate fit_packing_dimension(const SpectrumSpec& k, const RealVector& omegas) {
  if (omegas.empty()) throw ConfigError("packing dimension: omegas is empty");
  RealVector sorted = omegas;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  DimensionEstimate est;
  est.variant = DimensionVariant::packing_dim;
  RealVector x;
  RealVector y;
  for (double w : sorted) {
    if (!(w > 0.0) || !(w < 1.0)) throw ConfigError("packing dimension: omegas must lie in (0, 1)");
    x.push_back(-std::log(w));
    y.push_back(std::log(static_cast<double>(packing_number(k, w))));
    est.per_omega.push_back({w, y.back() / x.back(), 0});
  }
  if (x.size() == 1) {
    est.value = est.per_omega.front().value;
    return est;
  }
  // Shift by the first sample so that constant data gives an exact zero.
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] - x[0];
    my += y[i] - y[0];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - x[0] - mx;
    sxy += dx * (y[i] - y[0] - my);
    sxx += dx * dx;
  }
  est.value = sxy / sxx;
  return est;
}

double formula_delta_top_one_variable(const SpectrumSpec& k) {
  const auto n = k.cardinality();
  if (!n) return 1.0;
  return 1.0 - 1.0 / static_cast<double>(*n);
}

}  // namespace fedlab
