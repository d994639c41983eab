#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedlab/linalg.hpp"
#include "fedlab/rng.hpp"

namespace fedlab {

enum class Metric { op, hs };

Metric parse_metric(std::string_view text);
std::string to_string(Metric m);

/// Unitary-orbit invariant of a Hermitian matrix: its ascending spectrum.
struct OrbitPoint {
  RealVector sorted_eigs;

  static OrbitPoint of(const HermitianMatrix& a) { return {eig_sorted(a)}; }
};

/// Distance between ascending spectra: max |a_j - b_j| (op) or
/// sqrt(sum (a_j - b_j)^2 / k) (hs).
double sorted_spectrum_distance(std::span<const double> a, std::span<const double> b, Metric metric);

/// min over unitaries U of ||A - U B U*||, computed exactly from the sorted
/// spectra (Weyl for the operator norm, Hoffman-Wielandt for the trace norm).
double orbit_distance(const HermitianMatrix& a, const HermitianMatrix& b, Metric metric);
double orbit_distance(const OrbitPoint& a, const OrbitPoint& b, Metric metric);

/// ||A - B|| for tuples: max of operator norms, or the joint trace norm.
double tuple_distance(std::span<const HermitianMatrix> a, std::span<const HermitianMatrix> b, Metric metric);

/// Best ||candidate - W center W*|| found over the identity plus
/// `search_budget` Haar-sampled W, each refined by a fixed number of polar
/// (alternating) steps. An upper estimate of the tuple orbit distance.
double tuple_orbit_distance_upper(std::span<const HermitianMatrix> center, std::span<const HermitianMatrix> candidate,
                                  Metric metric, int search_budget, RngStream& stream);

/// Membership of `candidate` in the open omega-orbit-ball around `center`.
/// Exact for single matrices; for tuples a one-sided search, so `true` is
/// always correct and `false` means none of the tried conjugators worked.
bool orbit_ball_contains(std::span<const HermitianMatrix> center, std::span<const HermitianMatrix> candidate,
                         double omega, Metric metric, int search_budget, RngStream& stream);

/// Single pass in the given order keeping each point whose distance to every
/// kept point is >= omega. Returns indices into `samples`.
template <class Point, class Distance>
std::vector<std::size_t> greedy_packing(std::span<const Point> samples, Distance&& distance, double omega) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    bool far = true;
    for (std::size_t j : kept) {
      if (distance(samples[i], samples[j]) < omega) {
        far = false;
        break;
      }
    }
    if (far) kept.push_back(i);
  }
  return kept;
}

/// Single pass in the given order: the first sample not covered by an open
/// omega-ball around a chosen center becomes a new center.
template <class Point, class Distance>
std::vector<std::size_t> greedy_covering(std::span<const Point> samples, Distance&& distance, double omega) {
  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const bool covered = std::any_of(centers.begin(), centers.end(),
                                     [&](std::size_t c) { return distance(samples[i], samples[c]) < omega; });
    if (!covered) centers.push_back(i);
  }
  return centers;
}

/// Minimal number of open omega-orbit-op-norm balls, centred in the exact
/// microstate set of the finite spectrum `sigma` (ascending, distinct), that
/// cover it at matrix size k. Orbits are reduced to compositions of k and
/// covered exactly under the sorted-spectrum sup distance. Throws
/// InfeasibleRequest when k < |sigma| or when the exact search would exceed
/// its size budget.
std::uint64_t exact_orbit_covering_finite_spectrum(std::span<const double> sigma, int k, double omega);
/// Natural log of the same count; also valid when the count exceeds 64 bits
/// in the omega <= min-gap regime.
double log_exact_orbit_covering_finite_spectrum(std::span<const double> sigma, int k, double omega);

/// Block-diagonal model diag(lambda_1 I_t, ..., lambda_m I_t, lambda_{m+1}, ..., lambda_n)
/// parameters for the Haar-volume lower bound. C and C1 are the unnamed
/// universal constants of the bound.
struct BoundParams {
  int k = 0;
  int m = 0;
  int n = 0;
  int t = 0;
  double delta = 0.0;
  double theta = 0.0;
  double C = 1.0;
  double C1 = 1.0;

  void validate() const;
};

/// log of the lower bound on nu(Omega(A), delta/2):
///   -k^2 log(C1 4 delta/theta) - (2mt^2 + 4m(n-m)t + 2(n-m)^2) log(C theta/delta),
/// and for n == m: -k^2 log(C1 8 delta/theta) - m t^2 log(C theta/delta).
double volume_lower_bound_log(const BoundParams& params);

/// Exponent bundle multiplying log(C theta/delta) in volume_lower_bound_log.
double volume_bound_exponent(const BoundParams& params);

/// log of the partitioned lower bound for diag(lambda_1..lambda_k) whose index
/// set splits into blocks of sizes s_1..s_{m+1} (the last one unconstrained):
///   -k^2 log(C1 4 delta/theta) - (2 sum s_j^2 + 4 (s_1 + ... + s_m) s_{m+1}) log(C theta/delta).
double partition_lower_bound_log(std::span<const int> sizes, int k, double delta, double theta, double C = 1.0,
                                 double C1 = 1.0);
double partition_bound_exponent(std::span<const int> sizes);

/// Monte Carlo packing/covering of the unitary orbit of `model`.
struct OrbitPackingRequest {
  HermitianMatrix model = HermitianMatrix::identity(1);
  RealVector omegas;
  Metric metric = Metric::hs;
  std::size_t budget = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool with_covering = true;  // also run greedy covering at omega/2
  /// When set, every sampled matrix is bucketed against this net at
  /// `bucket_omega` and regime flags are counted.
  std::optional<RealVector> bucket_net;
  double bucket_omega = 0.0;
};

struct OrbitPackingResult {
  std::vector<std::size_t> packing;      // greedy packing count at each omega
  std::vector<std::size_t> covering_half;  // greedy covering count at omega/2
  std::size_t samples = 0;
  std::size_t flagged = 0;  // samples outside the bucketing regime
};

/// Samples are generated in fixed blocks of kSamplesPerStream, block b drawn
/// from RngStream(seed, b); blocks are merged in stream order before the
/// single sequential greedy pass, so results do not depend on `workers`.
inline constexpr std::size_t kSamplesPerStream = 256;
OrbitPackingResult monte_carlo_orbit_packing(const OrbitPackingRequest& request);

/// Flattened real coordinates of a Hermitian matrix whose Euclidean norm is
/// sqrt(Tr(A*A)): the diagonal, then sqrt(2) Re and sqrt(2) Im of the upper triangle.
RealVector hermitian_coordinates(const HermitianMatrix& a);
HermitianMatrix from_hermitian_coordinates(std::span<const double> coords, Eigen::Index k);

}  // namespace fedlab
