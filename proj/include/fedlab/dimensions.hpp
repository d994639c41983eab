#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedlab/orbits.hpp"
#include "fedlab/spectra.hpp"

namespace fedlab {

/// exact-orbit: exact orbit covering of a finite spectrum.
/// monte-carlo: greedy packing at omega / greedy covering at omega/2 of
///   sampled conjugates of an exact microstate.
/// analytic-bound: log of the Haar-volume lower bound.
/// net-orbit: log binomial(k-1, m-1) with m the packing number of the
///   spectrum at omega, i.e. the orbit count of block models over a
///   maximal separated net; agrees with exact-orbit below the minimum gap.
enum class CurveMethod { exact_orbit, monte_carlo, analytic_bound, net_orbit };

CurveMethod parse_curve_method(std::string_view text);
std::string to_string(CurveMethod m);

struct CurveRow {
  long long k = 0;
  double omega = 0.0;
  double log_lower = 0.0;
  double log_upper = 0.0;
  CurveMethod method = CurveMethod::exact_orbit;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
};

class CoveringCurve {
 public:
  /// Throws ConfigError when log_lower > log_upper or the (k, omega, method)
  /// key already exists.
  void add(const CurveRow& row);
  const std::vector<CurveRow>& rows() const noexcept { return rows_; }
  bool empty() const noexcept { return rows_.empty(); }

  /// Header `k,omega,log_lower,log_upper,method,seed,budget`, one line per row,
  /// reals at 17 significant digits.
  std::string to_csv() const;

 private:
  std::vector<CurveRow> rows_;
};

struct CurveRequest {
  SpectrumSpec target = SpectrumSpec::finite({0.0});
  std::vector<long long> ks;
  RealVector omegas;
  CurveMethod method = CurveMethod::exact_orbit;
  /// net-orbit only: when nonempty, the k list at each omega is m(omega)^p
  /// for every listed p instead of `ks`.
  std::vector<int> k_powers;
  std::size_t budget = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  Metric metric = Metric::op;
  double C = 1.0;
  double C1 = 1.0;
};

struct CurveBuild {
  CoveringCurve curve;
  std::size_t samples = 0;  // Monte Carlo samples drawn in total
  std::size_t flagged = 0;  // of which outside the bucketing regime
};

/// Errors: empty ks/omegas, nonpositive omega, k < 1 -> ConfigError;
/// exact-orbit or analytic-bound on an infinite spectrum and any k smaller
/// than the number of spectral values it needs -> InfeasibleRequest.
CurveBuild build_covering_curve(const CurveRequest& request);

/// Block model used for Monte Carlo at size k: the finite spectrum with
/// balanced multiplicities, or k evenly spaced points of the discretization.
HermitianMatrix curve_model(const SpectrumSpec& target, long long k);

enum class DimensionVariant { delta_top, delta_top_tilde, orbit_f_log_over_k2, orbit_f_loglog, packing_dim };
std::string to_string(DimensionVariant v);

/// smallest_omega: the statistic at the smallest omega. tail_max: the maximum
/// over the smaller half of the omega grid.
enum class Reduction { smallest_omega, tail_max };
Reduction parse_reduction(std::string_view text);
std::string to_string(Reduction r);

struct OmegaValue {
  double omega = 0.0;
  double value = 0.0;
  long long k = 0;  // k attaining the max, 0 for packing_dim
};

struct DimensionEstimate {
  double value = 0.0;
  std::vector<OmegaValue> per_omega;  // ascending omega
  DimensionVariant variant = DimensionVariant::delta_top;
  Reduction reduction = Reduction::smallest_omega;
  std::size_t skipped_rows = 0;
};

/// Per omega the max over k of log_lower / (-k^2 log omega).
DimensionEstimate fit_delta_top(const CoveringCurve& curve, DimensionVariant variant = DimensionVariant::delta_top,
                                Reduction reduction = Reduction::smallest_omega);

enum class OrbitVariant { f_log_over_k2, f_loglog };
OrbitVariant parse_orbit_variant(std::string_view text);

/// f_log_over_k2: log s / (-k^2 log omega).
/// f_loglog: log(log s / log k) / (-log omega), rows with s = 1 or k < 2 skipped.
DimensionEstimate fit_orbit_dimension(const CoveringCurve& curve, OrbitVariant variant,
                                      Reduction reduction = Reduction::smallest_omega);

/// Least-squares slope of log P(K, omega) against -log omega; per-omega
/// entries hold log P / (-log omega).
DimensionEstimate fit_packing_dimension(const SpectrumSpec& k, const RealVector& omegas);

/// 1 - 1/|K| for finite K, 1 for infinite K.
double formula_delta_top_one_variable(const SpectrumSpec& k);

}  // namespace fedlab
