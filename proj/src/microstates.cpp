#include "fedlab/microstates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fedlab/error.hpp"

namespace fedlab {

MultiplicityVector::MultiplicityVector(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw ConfigError("MultiplicityVector: no parts");
  for (int p : parts_) {
    if (p < 1) throw ConfigError("MultiplicityVector: every part must be >= 1");
    total_ += p;
  }
}

MultiplicityVector MultiplicityVector::balanced(int k, int n) {
  if (n < 1 || n > k) throw ConfigError("MultiplicityVector::balanced: need 1 <= n <= k");
  std::vector<int> parts(static_cast<std::size_t>(n), k / n);
  for (int i = 0; i < k % n; ++i) ++parts[static_cast<std::size_t>(i)];
  return MultiplicityVector(std::move(parts));
}

namespace {

bool is_coordinate(const NCPolynomial& p, int index) {
  if (p.terms().size() != 1) return false;
  const auto& [w, c] = *p.terms().begin();
  return w.size() == 1 && w.front() == index && c == Complex(1.0);
}

}  // namespace

MicrostateParams::MicrostateParams(double R_, double epsilon_, int k_, std::vector<NCPolynomial> polys_,
                                   MicrostateTarget target_)
    : R(R_), epsilon(epsilon_), k(k_), polys(std::move(polys_)), target(std::move(target_)) {
  if (!(epsilon > 0.0)) throw ConfigError("MicrostateParams: epsilon must be > 0");
  if (k < 1) throw ConfigError("MicrostateParams: k must be >= 1");

  const int n = n_vars();
  for (const auto& p : polys) {
    if (p.n_vars() != n) throw ConfigError("MicrostateParams: polynomial arity differs from the target");
  }
  for (int i = 0; i < n; ++i) {
    const bool found = std::any_of(polys.begin(), polys.end(), [i](const auto& p) { return is_coordinate(p, i); });
    if (!found) {
      throw ConfigError("MicrostateParams: polynomial family must contain the coordinate X" + std::to_string(i + 1));
    }
  }

  double target_radius = 0.0;
  if (const auto* spec = std::get_if<SpectrumSpec>(&target)) {
    target_radius = spec->spectral_radius();
    const RealVector pts = discretize(*spec);
    for (const auto& p : polys) target_norms_.push_back(sup_norm_on_points(p, pts));
  } else {
    const auto& tuple = std::get<HermitianTuple>(target);
    target_radius = op_norm(std::span<const HermitianMatrix>(tuple));
    for (const auto& p : polys) target_norms_.push_back(op_norm(eval_matrix(p, tuple)));
  }
  if (!(R > target_radius)) {
    throw ConfigError("MicrostateParams: R must exceed the target norm " + std::to_string(target_radius));
  }
}

int MicrostateParams::n_vars() const {
  if (std::holds_alternative<SpectrumSpec>(target)) return 1;
  const auto& tuple = std::get<HermitianTuple>(target);
  if (tuple.empty()) throw ConfigError("MicrostateParams: empty reference tuple");
  return static_cast<int>(tuple.size());
}

MembershipReport is_microstate(std::span<const HermitianMatrix> tuple, const MicrostateParams& params) {
  if (static_cast<int>(tuple.size()) != params.n_vars()) {
    throw DimensionMismatch("is_microstate: tuple has " + std::to_string(tuple.size()) +
                            " matrices but the target has " + std::to_string(params.n_vars()) + " variables");
  }
  for (const auto& a : tuple) {
    if (a.dim() != params.k) throw DimensionMismatch("is_microstate: matrix dimension differs from params.k");
  }
  MembershipReport report;
  report.max_norm = op_norm(tuple);
  report.within_norm_cap = report.max_norm <= params.R;
  bool all_within = true;
  for (std::size_t j = 0; j < params.polys.size(); ++j) {
    const double value = op_norm(eval_matrix(params.polys[j], tuple));
    const double slack = std::abs(value - params.target_norms()[j]);
    report.slacks.push_back(slack);
    all_within = all_within && slack <= params.epsilon;
  }
  report.member = report.within_norm_cap && all_within;
  return report;
}

MembershipReport is_microstate(const HermitianMatrix& a, const MicrostateParams& params) {
  return is_microstate(std::span<const HermitianMatrix>(&a, 1), params);
}

HermitianMatrix exact_microstate(std::span<const double> values, const MultiplicityVector& mult,
                                 std::span<const double> tail) {
  if (values.size() != mult.size()) {
    throw DimensionMismatch("exact_microstate: " + std::to_string(values.size()) + " values but " +
                            std::to_string(mult.size()) + " multiplicities");
  }
  RealVector diag;
  diag.reserve(static_cast<std::size_t>(mult.total()) + tail.size());
  for (std::size_t j = 0; j < values.size(); ++j) diag.insert(diag.end(), static_cast<std::size_t>(mult[j]), values[j]);
  diag.insert(diag.end(), tail.begin(), tail.end());
  return HermitianMatrix::diagonal(diag);
}

std::optional<MultiplicityVector> BucketReport::multiplicities() const {
  if (!empty_buckets.empty()) return std::nullopt;
  return MultiplicityVector(counts);
}

BucketReport bucket_eigenvalues(std::span<const double> eigs, std::span<const double> net, double omega) {
  if (net.empty()) throw ConfigError("bucket_spectrum: empty net");
  BucketReport report;
  report.counts.assign(net.size(), 0);
  for (double lambda : eigs) {
    // First net point >= lambda; compare with its left neighbour.
    auto it = std::lower_bound(net.begin(), net.end(), lambda);
    std::size_t idx = 0;
    if (it == net.end()) {
      idx = net.size() - 1;
    } else {
      idx = static_cast<std::size_t>(it - net.begin());
      if (idx > 0 && lambda - net[idx - 1] <= *it - lambda) --idx;
    }
    ++report.counts[idx];
    report.deviation = std::max(report.deviation, std::abs(lambda - net[idx]));
  }
  for (std::size_t j = 0; j < net.size(); ++j) {
    if (report.counts[j] == 0) report.empty_buckets.push_back(j);
  }
  report.in_regime = report.empty_buckets.empty() && report.deviation <= 2.0 * omega;
  return report;
}

BucketReport bucket_spectrum(const HermitianMatrix& a, const SpectralNet& net, double omega) {
  const RealVector eigs = eig_sorted(a);
  return bucket_eigenvalues(eigs, net.points, omega);
}

std::vector<int> eigenvalue_partition(std::span<const double> eigs, const MultiplicityVector& blocks, int m,
                                      std::optional<RealVector> targets, std::optional<double> half_width) {
  if (m < 1) throw ConfigError("eigenvalue_partition: m must be >= 1");
  if (static_cast<int>(blocks.size()) != m) {
    throw DimensionMismatch("eigenvalue_partition: expected " + std::to_string(m) + " blocks, got " +
                            std::to_string(blocks.size()));
  }
  if (static_cast<int>(eigs.size()) != blocks.total()) {
    throw DimensionMismatch("eigenvalue_partition: " + std::to_string(eigs.size()) + " eigenvalues for blocks of total " +
                            std::to_string(blocks.total()));
  }
  RealVector centre = targets.value_or(RealVector{});
  if (!targets) {
    for (int j = 1; j <= m; ++j) centre.push_back(j);
  }
  if (static_cast<int>(centre.size()) != m) throw DimensionMismatch("eigenvalue_partition: one target per block");
  const double width = half_width.value_or(1.0 / m);

  std::vector<int> sizes(static_cast<std::size_t>(m) + 1, 0);
  std::size_t i = 0;
  int inside = 0;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    for (int t = 0; t < blocks[j]; ++t, ++i) {
      if (std::abs(eigs[i] - centre[j]) <= width) ++sizes[j];
    }
    inside += sizes[j];
  }
  sizes.back() = blocks.total() - inside;
  return sizes;
}

CompositionRange::CompositionRange(int k, int n) : k_(k), n_(n) {
  if (n < 1) throw ConfigError("enumerate_multiplicity_vectors: n must be >= 1");
  if (n > k) {
    throw ConfigError("enumerate_multiplicity_vectors: n=" + std::to_string(n) + " exceeds k=" + std::to_string(k));
  }
}

CompositionRange::iterator CompositionRange::begin() const {
  std::vector<int> parts(static_cast<std::size_t>(n_), 1);
  parts.back() = k_ - (n_ - 1);
  return iterator(std::move(parts), false);
}

CompositionRange::iterator& CompositionRange::iterator::operator++() {
  // Next composition in lexicographic order: find the rightmost position
  // (excluding the last) that can grow by taking from the tail.
  const std::size_t n = parts_.size();
  if (n < 2) {
    done_ = true;
    return *this;
  }
  int tail = parts_.back();
  std::size_t i = n - 1;
  while (i > 0) {
    --i;
    // Positions i+1..n-1 hold `tail` in total; they need at least n-1-i.
    const int needed = static_cast<int>(n - 1 - i);
    if (tail > needed) {
      ++parts_[i];
      for (std::size_t j = i + 1; j + 1 < n; ++j) parts_[j] = 1;
      parts_.back() = tail - 1 - (needed - 1);
      return *this;
    }
    tail += parts_[i];
  }
  done_ = true;
  return *this;
}

std::uint64_t CompositionRange::count() const {
  return binomial(static_cast<std::uint64_t>(k_ - 1), static_cast<std::uint64_t>(n_ - 1));
}

CompositionRange enumerate_multiplicity_vectors(int k, int n) { return CompositionRange(k, n); }

__extension__ using Wide = unsigned __int128;

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  Wide acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      throw InfeasibleRequest("binomial(" + std::to_string(n) + ", " + std::to_string(r) + ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

double log_binomial(double n, double r) {
  if (r < 0.0 || r > n) throw ConfigError("log_binomial: need 0 <= r <= n");
  r = std::min(r, n - r);
  if (r <= 100000.0) {
    double sum = 0.0;
    for (double i = 1.0; i <= r; i += 1.0) sum += std::log((n - r + i) / i);
    return sum;
  }
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

}  // namespace fedlab
