#include "fedlab/orbits.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "fedlab/error.hpp"
#include "fedlab/microstates.hpp"

namespace fedlab {

Metric parse_metric(std::string_view text) {
  if (text == "op") return Metric::op;
  if (text == "hs") return Metric::hs;
  throw ConfigError("metric: expected 'op' or 'hs', got '" + std::string(text) + "'");
}

std::string to_string(Metric m) { return m == Metric::op ? "op" : "hs"; }

double sorted_spectrum_distance(std::span<const double> a, std::span<const double> b, Metric metric) {
  if (a.size() != b.size()) throw DimensionMismatch("orbit_distance: dimension mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    acc = metric == Metric::op ? std::max(acc, std::abs(d)) : acc + d * d;
  }
  if (metric == Metric::hs) acc = std::sqrt(acc / static_cast<double>(a.size()));
  return acc;
}

double orbit_distance(const OrbitPoint& a, const OrbitPoint& b, Metric metric) {
  return sorted_spectrum_distance(a.sorted_eigs, b.sorted_eigs, metric);
}

double orbit_distance(const HermitianMatrix& a, const HermitianMatrix& b, Metric metric) {
  if (a.dim() != b.dim()) throw DimensionMismatch("orbit_distance: dimension mismatch");
  return orbit_distance(OrbitPoint::of(a), OrbitPoint::of(b), metric);
}

double tuple_distance(std::span<const HermitianMatrix> a, std::span<const HermitianMatrix> b, Metric metric) {
  if (a.size() != b.size()) throw DimensionMismatch("tuple_distance: tuples have different lengths");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const HermitianMatrix d = difference(a[i], b[i]);
    if (metric == Metric::op) {
      acc = std::max(acc, op_norm(d));
    } else {
      const double h = hs_norm(d);
      acc += h * h;
    }
  }
  return metric == Metric::op ? acc : std::sqrt(acc);
}

namespace {

constexpr int kRefinementSteps = 60;

void check_shapes(std::span<const HermitianMatrix> a, std::span<const HermitianMatrix> b) {
  if (a.empty() || a.size() != b.size()) throw DimensionMismatch("orbit ball: tuples must have equal nonzero length");
  const auto k = a.front().dim();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].dim() != k || b[i].dim() != k) throw DimensionMismatch("orbit ball: matrix dimensions differ");
  }
}

// ||candidate - W center W*|| for the given W.
double conjugated_gap(std::span<const HermitianMatrix> center, std::span<const HermitianMatrix> candidate,
                      const ComplexMatrix& w, Metric metric) {
  double acc = 0.0;
  for (std::size_t i = 0; i < center.size(); ++i) {
    const HermitianMatrix d =
        HermitianMatrix::hermitize(candidate[i].entries() - w * center[i].entries() * w.adjoint());
    if (metric == Metric::op) {
      acc = std::max(acc, op_norm(d));
    } else {
      const double h = hs_norm(d);
      acc += h * h;
    }
  }
  return metric == Metric::op ? acc : std::sqrt(acc);
}

// Polar iteration W <- polar(sum_i A_i W B_i) with shifted positive definite
// A_i, B_i; each step does not decrease sum_i Re Tr(A_i W B_i W*), i.e. does
// not increase the joint trace-norm gap.
double refine(std::span<const HermitianMatrix> center, std::span<const HermitianMatrix> candidate,
              ComplexMatrix w, Metric metric) {
  const auto k = center.front().dim();
  // The smallest shift making every matrix positive semidefinite; a larger
  // one keeps monotonicity but slows the iteration down.
  double shift = 0.0;
  for (std::size_t i = 0; i < center.size(); ++i) {
    shift = std::max({shift, -eig_sorted(center[i]).front(), -eig_sorted(candidate[i]).front()});
  }
  shift += 1e-3;
  const ComplexMatrix id = ComplexMatrix::Identity(k, k);
  double best = conjugated_gap(center, candidate, w, metric);
  for (int step = 0; step < kRefinementSteps; ++step) {
    ComplexMatrix grad = ComplexMatrix::Zero(k, k);
    for (std::size_t i = 0; i < center.size(); ++i) {
      grad += (candidate[i].entries() + shift * id) * w * (center[i].entries() + shift * id);
    }
    w = polar_unitary(grad).entries();
    best = std::min(best, conjugated_gap(center, candidate, w, metric));
  }
  return best;
}

}  // namespace

double tuple_orbit_distance_upper(std::span<const HermitianMatrix> center, std::span<const HermitianMatrix> candidate,
                                  Metric metric, int search_budget, RngStream& stream) {
  check_shapes(center, candidate);
  const auto k = center.front().dim();
  double best = refine(center, candidate, ComplexMatrix::Identity(k, k), metric);
  for (int s = 0; s < search_budget; ++s) {
    const UnitaryMatrix w = haar_unitary(k, stream);
    best = std::min(best, refine(center, candidate, w.entries(), metric));
  }
  return best;
}

bool orbit_ball_contains(std::span<const HermitianMatrix> center, std::span<const HermitianMatrix> candidate,
                         double omega, Metric metric, int search_budget, RngStream& stream) {
  check_shapes(center, candidate);
  if (!(omega > 0.0)) throw ConfigError("orbit_ball_contains: omega must be > 0");
  if (center.size() == 1) return orbit_distance(center.front(), candidate.front(), metric) < omega;
  const auto k = center.front().dim();
  if (refine(center, candidate, ComplexMatrix::Identity(k, k), metric) < omega) return true;
  for (int s = 0; s < search_budget; ++s) {
    const UnitaryMatrix w = haar_unitary(k, stream);
    if (refine(center, candidate, w.entries(), metric) < omega) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Exact orbit covering for finite spectra.

namespace {

constexpr std::size_t kMaxExactCompositions = 4096;
constexpr std::uint64_t kMaxSearchNodes = 2'000'000;

// Sup distance between the sorted spectra of two exact microstates given by
// their compositions over the common value list.
double composition_distance(const std::vector<int>& a, const std::vector<int>& b, std::span<const double> values) {
  std::size_t ia = 0;
  std::size_t ib = 0;
  int left_a = a[0];
  int left_b = b[0];
  double best = 0.0;
  while (ia < a.size() && ib < b.size()) {
    best = std::max(best, std::abs(values[ia] - values[ib]));
    const int step = std::min(left_a, left_b);
    left_a -= step;
    left_b -= step;
    if (left_a == 0 && ++ia < a.size()) left_a = a[ia];
    if (left_b == 0 && ++ib < b.size()) left_b = b[ib];
  }
  return best;
}

class DominatingSetSolver {
 public:
  explicit DominatingSetSolver(std::vector<std::vector<std::uint64_t>> closed_nbhd)
      : nbhd_(std::move(closed_nbhd)), n_(nbhd_.size()), words_((n_ + 63) / 64) {}

  std::size_t solve() {
    std::vector<std::uint64_t> undominated(words_, ~std::uint64_t{0});
    if (n_ % 64) undominated.back() = (std::uint64_t{1} << (n_ % 64)) - 1;
    best_ = greedy(undominated);
    search(undominated, 0);
    return best_;
  }

 private:
  static std::size_t popcount(const std::vector<std::uint64_t>& v) {
    std::size_t c = 0;
    for (auto w : v) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  std::size_t overlap(std::size_t v, const std::vector<std::uint64_t>& u) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(__builtin_popcountll(nbhd_[v][w] & u[w]));
    return c;
  }

  void remove(std::vector<std::uint64_t>& u, std::size_t v) const {
    for (std::size_t w = 0; w < words_; ++w) u[w] &= ~nbhd_[v][w];
  }

  std::size_t greedy(std::vector<std::uint64_t> u) const {
    std::size_t chosen = 0;
    while (popcount(u) > 0) {
      std::size_t pick = 0;
      std::size_t gain = 0;
      for (std::size_t v = 0; v < n_; ++v) {
        const std::size_t g = overlap(v, u);
        if (g > gain) {
          gain = g;
          pick = v;
        }
      }
      remove(u, pick);
      ++chosen;
    }
    return chosen;
  }

  void search(const std::vector<std::uint64_t>& u, std::size_t depth) {
    if (++nodes_ > kMaxSearchNodes) {
      throw InfeasibleRequest("exact orbit covering: search budget exhausted; use a radius below the minimum gap");
    }
    const std::size_t remaining = popcount(u);
    if (remaining == 0) {
      best_ = std::min(best_, depth);
      return;
    }
    std::size_t max_gain = 0;
    for (std::size_t v = 0; v < n_; ++v) max_gain = std::max(max_gain, overlap(v, u));
    const std::size_t lower = depth + (remaining + max_gain - 1) / max_gain;
    if (lower >= best_) return;

    // Branch on the undominated vertex with the fewest possible dominators.
    std::size_t pivot = n_;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t v = 0; v < n_; ++v) {
      if (!((u[v / 64] >> (v % 64)) & 1u)) continue;
      const std::size_t d = popcount(nbhd_[v]);
      if (d < fewest) {
        fewest = d;
        pivot = v;
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> options;
    for (std::size_t v = 0; v < n_; ++v) {
      if ((nbhd_[pivot][v / 64] >> (v % 64)) & 1u) options.emplace_back(overlap(v, u), v);
    }
    std::sort(options.begin(), options.end(), std::greater<>());
    for (const auto& [gain, v] : options) {
      std::vector<std::uint64_t> next = u;
      remove(next, v);
      search(next, depth + 1);
    }
  }

  std::vector<std::vector<std::uint64_t>> nbhd_;
  std::size_t n_;
  std::size_t words_;
  std::size_t best_ = 0;
  std::uint64_t nodes_ = 0;
};

struct CoveringRegime {
  enum Kind { all_separate, single_ball, search } kind;
};

CoveringRegime classify(std::span<const double> sigma, int k, double omega) {
  if (sigma.empty()) throw ConfigError("exact orbit covering: empty spectrum");
  if (!(omega > 0.0)) throw ConfigError("exact orbit covering: omega must be > 0");
  for (std::size_t i = 1; i < sigma.size(); ++i) {
    if (!(sigma[i] > sigma[i - 1])) throw ConfigError("exact orbit covering: spectrum must be strictly increasing");
  }
  if (k < static_cast<int>(sigma.size())) {
    throw InfeasibleRequest("exact orbit covering: k=" + std::to_string(k) + " is smaller than the " +
                            std::to_string(sigma.size()) + " spectral values, so no exact microstate exists");
  }
  if (sigma.size() == 1) return {CoveringRegime::single_ball};
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sigma.size(); ++i) gap = std::min(gap, sigma[i] - sigma[i - 1]);
  // Distinct compositions sit at sup distance >= gap, and open balls of
  // radius omega <= gap hold one orbit each.
  if (omega <= gap) return {CoveringRegime::all_separate};
  if (omega > sigma.back() - sigma.front()) return {CoveringRegime::single_ball};
  return {CoveringRegime::search};
}

std::uint64_t search_cover(std::span<const double> sigma, int k, double omega) {
  const auto n = static_cast<int>(sigma.size());
  const auto total = binomial(static_cast<std::uint64_t>(k - 1), static_cast<std::uint64_t>(n - 1));
  if (total > kMaxExactCompositions) {
    throw InfeasibleRequest("exact orbit covering: " + std::to_string(total) +
                            " orbits exceed the exact-search limit for radii above the minimum gap");
  }
  std::vector<std::vector<int>> comps;
  for (auto it = enumerate_multiplicity_vectors(k, n).begin(); it != CompositionRange::iterator{}; ++it) {
    comps.push_back(it.parts());
  }
  const std::size_t count = comps.size();
  const std::size_t words = (count + 63) / 64;
  std::vector<std::vector<std::uint64_t>> nbhd(count, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < count; ++i) {
    nbhd[i][i / 64] |= std::uint64_t{1} << (i % 64);
    for (std::size_t j = i + 1; j < count; ++j) {
      if (composition_distance(comps[i], comps[j], sigma) < omega) {
        nbhd[i][j / 64] |= std::uint64_t{1} << (j % 64);
        nbhd[j][i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
  }
  return DominatingSetSolver(std::move(nbhd)).solve();
}

}  // namespace

std::uint64_t exact_orbit_covering_finite_spectrum(std::span<const double> sigma, int k, double omega) {
  switch (classify(sigma, k, omega).kind) {
    case CoveringRegime::single_ball:
      return 1;
    case CoveringRegime::all_separate:
      return binomial(static_cast<std::uint64_t>(k - 1), sigma.size() - 1);
    case CoveringRegime::search:
      break;
  }
  return search_cover(sigma, k, omega);
}

double log_exact_orbit_covering_finite_spectrum(std::span<const double> sigma, int k, double omega) {
  switch (classify(sigma, k, omega).kind) {
    case CoveringRegime::single_ball:
      return 0.0;
    case CoveringRegime::all_separate:
      return log_binomial(static_cast<double>(k - 1), static_cast<double>(sigma.size() - 1));
    case CoveringRegime::search:
      break;
  }
  return std::log(static_cast<double>(search_cover(sigma, k, omega)));
}

// ---------------------------------------------------------------------------
// Analytic lower bounds.

void BoundParams::validate() const {
  if (m < 1 || n < m) throw ConfigError("bound params: need n >= m >= 1");
  if (t < 1) throw ConfigError("bound params: t must be >= 1");
  if (k != m * t + n - m) throw ConfigError("bound params: k must equal m*t + n - m");
  if (!(delta > 0.0) || !(theta > 0.0)) throw ConfigError("bound params: delta and theta must be > 0");
  if (!(C > 0.0) || !(C1 > 0.0)) throw ConfigError("bound params: constants C and C1 must be > 0");
}

double volume_bound_exponent(const BoundParams& p) {
  p.validate();
  const double m = p.m;
  const double t = p.t;
  const double r = p.n - p.m;
  if (p.n == p.m) return m * t * t;
  return 2.0 * m * t * t + 4.0 * m * r * t + 2.0 * r * r;
}

double volume_lower_bound_log(const BoundParams& p) {
  const double exponent = volume_bound_exponent(p);
  const double k2 = static_cast<double>(p.k) * p.k;
  const double ball = (p.n == p.m ? 8.0 : 4.0) * p.C1 * p.delta / p.theta;
  return -k2 * std::log(ball) - exponent * std::log(p.C * p.theta / p.delta);
}

double partition_bound_exponent(std::span<const int> sizes) {
  if (sizes.size() < 2) throw ConfigError("partition bound: need m >= 1 constrained blocks plus the remainder");
  double squares = 0.0;
  double constrained = 0.0;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    if (sizes[j] < 0) throw ConfigError("partition bound: block sizes must be >= 0");
    squares += static_cast<double>(sizes[j]) * sizes[j];
    if (j + 1 < sizes.size()) constrained += sizes[j];
  }
  return 2.0 * squares + 4.0 * constrained * sizes.back();
}

double partition_lower_bound_log(std::span<const int> sizes, int k, double delta, double theta, double C, double C1) {
  const double exponent = partition_bound_exponent(sizes);
  if (std::accumulate(sizes.begin(), sizes.end(), 0) != k) throw ConfigError("partition bound: sizes must sum to k");
  if (!(delta > 0.0) || !(theta > 0.0)) throw ConfigError("partition bound: delta and theta must be > 0");
  if (!(C > 0.0) || !(C1 > 0.0)) throw ConfigError("partition bound: constants must be > 0");
  const double k2 = static_cast<double>(k) * k;
  return -k2 * std::log(4.0 * C1 * delta / theta) - exponent * std::log(C * theta / delta);
}

// ---------------------------------------------------------------------------
// Monte Carlo orbit packing.

RealVector hermitian_coordinates(const HermitianMatrix& a) {
  const auto k = a.dim();
  RealVector c;
  c.reserve(static_cast<std::size_t>(k * k));
  for (Eigen::Index i = 0; i < k; ++i) c.push_back(a(i, i).real());
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      c.push_back(r2 * a(i, j).real());
      c.push_back(r2 * a(i, j).imag());
    }
  }
  return c;
}

HermitianMatrix from_hermitian_coordinates(std::span<const double> c, Eigen::Index k) {
  if (static_cast<Eigen::Index>(c.size()) != k * k) throw DimensionMismatch("from_hermitian_coordinates: size mismatch");
  ComplexMatrix m(k, k);
  std::size_t pos = 0;
  for (Eigen::Index i = 0; i < k; ++i) m(i, i) = c[pos++];
  const double inv = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const Complex z(c[pos] * inv, c[pos + 1] * inv);
      pos += 2;
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return HermitianMatrix::hermitize(m);
}

namespace {

// Greedy omega-separated subset of points in coordinate form, with a uniform
// grid over a few coordinates to skip far-away kept points. Any pair at
// distance < omega differs by < omega*sqrt(k) in every coordinate under both
// metrics, so only neighbouring cells need to be checked.
class SeparatedSet {
 public:
  SeparatedSet(Eigen::Index k, Metric metric, double omega)
      : k_(k), dim_(static_cast<std::size_t>(k * k)), metric_(metric), omega_(omega),
        cell_(omega * std::sqrt(static_cast<double>(k))) {
    axes_ = {0, std::min<std::size_t>(1, dim_ - 1), std::min<std::size_t>(static_cast<std::size_t>(k), dim_ - 1)};
    n_axes_ = k == 1 ? 1 : 3;
  }

  // Inserts `p` if it is at distance >= omega from every kept point.
  bool offer(std::span<const double> p) {
    const Key key = key_of(p);
    bool far = true;
    visit_neighbours(key, 0, Key{}, [&](std::uint32_t idx) {
      if (far && distance(p, point(idx)) < omega_) far = false;
    });
    if (far) {
      const auto idx = static_cast<std::uint32_t>(count_);
      kept_.insert(kept_.end(), p.begin(), p.end());
      ++count_;
      cells_[key].push_back(idx);
    }
    return far;
  }

  std::size_t size() const noexcept { return count_; }

 private:
  using Key = std::array<std::int64_t, 3>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = 1469598103934665603ull;
      for (auto v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
      return static_cast<std::size_t>(h);
    }
  };

  Key key_of(std::span<const double> p) const {
    Key key{0, 0, 0};
    for (std::size_t a = 0; a < n_axes_; ++a) key[a] = static_cast<std::int64_t>(std::floor(p[axes_[a]] / cell_));
    return key;
  }

  template <class F>
  void visit_neighbours(const Key& centre, std::size_t axis, Key probe, F&& f) const {
    if (axis == n_axes_) {
      auto it = cells_.find(probe);
      if (it != cells_.end()) {
        for (auto idx : it->second) f(idx);
      }
      return;
    }
    for (std::int64_t d = -1; d <= 1; ++d) {
      probe[axis] = centre[axis] + d;
      visit_neighbours(centre, axis + 1, probe, f);
    }
  }

  std::span<const double> point(std::uint32_t idx) const {
    return std::span<const double>(kept_.data() + static_cast<std::size_t>(idx) * dim_, dim_);
  }

  double distance(std::span<const double> a, std::span<const double> b) const {
    double sq = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double d = a[i] - b[i];
      sq += d * d;
    }
    const double hs = std::sqrt(sq / static_cast<double>(k_));
    if (metric_ == Metric::hs) return hs;
    // hs <= op <= sqrt(k) hs decides most comparisons without an eigensolve.
    if (hs >= omega_) return hs;
    if (hs * std::sqrt(static_cast<double>(k_)) < omega_) return hs * std::sqrt(static_cast<double>(k_));
    RealVector diff(dim_);
    for (std::size_t i = 0; i < dim_; ++i) diff[i] = a[i] - b[i];
    return op_norm(from_hermitian_coordinates(diff, k_));
  }

  Eigen::Index k_;
  std::size_t dim_;
  Metric metric_;
  double omega_;
  double cell_;
  std::array<std::size_t, 3> axes_{};
  std::size_t n_axes_ = 3;
  std::vector<double> kept_;
  std::size_t count_ = 0;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> cells_;
};

struct SampleBlock {
  std::vector<double> coords;
  std::size_t flagged = 0;
};

SampleBlock sample_block(const OrbitPackingRequest& req, std::uint64_t stream_id, std::size_t count) {
  RngStream stream(req.seed, stream_id);
  const auto k = req.model.dim();
  SampleBlock block;
  block.coords.reserve(count * static_cast<std::size_t>(k * k));
  for (std::size_t i = 0; i < count; ++i) {
    const UnitaryMatrix u = haar_unitary(k, stream);
    const HermitianMatrix sample = conjugate(req.model, u);
    if (req.bucket_net) {
      const BucketReport report = bucket_eigenvalues(eig_sorted(sample), *req.bucket_net, req.bucket_omega);
      if (!report.in_regime) ++block.flagged;
    }
    const RealVector c = hermitian_coordinates(sample);
    block.coords.insert(block.coords.end(), c.begin(), c.end());
  }
  return block;
}

}  // namespace

OrbitPackingResult monte_carlo_orbit_packing(const OrbitPackingRequest& req) {
  if (req.omegas.empty()) throw ConfigError("monte carlo packing: no radii requested");
  for (double w : req.omegas) {
    if (!(w > 0.0)) throw ConfigError("monte carlo packing: radii must be > 0");
  }
  if (req.budget < 1) throw ConfigError("monte carlo packing: budget must be >= 1");
  const auto k = req.model.dim();
  const std::size_t dim = static_cast<std::size_t>(k * k);
  const unsigned workers = std::max(1u, req.workers);

  std::vector<SeparatedSet> packings;
  std::vector<SeparatedSet> coverings;
  for (double w : req.omegas) {
    packings.emplace_back(k, req.metric, w);
    if (req.with_covering) coverings.emplace_back(k, req.metric, w / 2.0);
  }

  OrbitPackingResult result;
  const std::size_t n_blocks = (req.budget + kSamplesPerStream - 1) / kSamplesPerStream;
  const std::size_t batch = static_cast<std::size_t>(workers) * 4;
  for (std::size_t first = 0; first < n_blocks; first += batch) {
    const std::size_t last = std::min(n_blocks, first + batch);
    std::vector<SampleBlock> blocks(last - first);
    auto produce = [&](std::size_t b) {
      const std::size_t begin = b * kSamplesPerStream;
      const std::size_t count = std::min(kSamplesPerStream, req.budget - begin);
      blocks[b - first] = sample_block(req, b, count);
    };
    if (workers == 1) {
      for (std::size_t b = first; b < last; ++b) produce(b);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t b = first + w; b < last; b += workers) produce(b);
        });
      }
      for (auto& t : pool) t.join();
    }
    // Sequential greedy stage in (stream, index) order.
    for (const auto& block : blocks) {
      result.flagged += block.flagged;
      const std::size_t n = block.coords.size() / dim;
      for (std::size_t i = 0; i < n; ++i) {
        const std::span<const double> p(block.coords.data() + i * dim, dim);
        for (auto& s : packings) s.offer(p);
        for (auto& s : coverings) s.offer(p);
      }
      result.samples += n;
    }
  }
  for (const auto& s : packings) result.packing.push_back(s.size());
  for (const auto& s : coverings) result.covering_half.push_back(s.size());
  return result;
}

}  // namespace fedlab
