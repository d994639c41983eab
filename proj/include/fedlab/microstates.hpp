#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "fedlab/linalg.hpp"
#include "fedlab/ncpoly.hpp"
#include "fedlab/spectra.hpp"

namespace fedlab {

/// Ordered composition (k_1, ..., k_n) of k into positive parts.
class MultiplicityVector {
 public:
  explicit MultiplicityVector(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  int total() const noexcept { return total_; }
  int operator[](std::size_t i) const { return parts_[i]; }

  /// Composition with parts as equal as possible, larger parts first.
  static MultiplicityVector balanced(int k, int n);

  friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

/// Reference element whose norms the microstates reproduce: a spectrum for
/// one self-adjoint variable, or an explicit tuple of matrices.
using MicrostateTarget = std::variant<SpectrumSpec, HermitianTuple>;

struct MicrostateParams {
  double R = 0.0;
  double epsilon = 0.0;
  int k = 0;
  std::vector<NCPolynomial> polys;
  MicrostateTarget target;

  MicrostateParams(double R, double epsilon, int k, std::vector<NCPolynomial> polys, MicrostateTarget target);

  int n_vars() const;
  /// ||P_j(x)|| for every polynomial in `polys`, in order.
  const RealVector& target_norms() const noexcept { return target_norms_; }

 private:
  RealVector target_norms_;
};

struct MembershipReport {
  bool member = false;
  bool within_norm_cap = false;
  double max_norm = 0.0;
  RealVector slacks;  // |‖P_j(A)‖ - ‖P_j(x)‖| per polynomial
};

/// Membership in the norm-microstate space: max_i ||A_i|| <= R and
/// every polynomial slack <= epsilon.
MembershipReport is_microstate(std::span<const HermitianMatrix> tuple, const MicrostateParams& params);
MembershipReport is_microstate(const HermitianMatrix& a, const MicrostateParams& params);

/// diag(lambda_1 I_{k_1}, ..., lambda_m I_{k_m}, tail...).
HermitianMatrix exact_microstate(std::span<const double> values, const MultiplicityVector& mult,
                                 std::span<const double> tail = {});

struct BucketReport {
  std::vector<int> counts;           // per net point, zero when empty
  std::vector<std::size_t> empty_buckets;
  double deviation = 0.0;            // max |eigenvalue - assigned net point|
  bool in_regime = false;            // all buckets occupied and deviation <= 2 omega

  /// Bucket counts as a composition when every bucket is occupied.
  std::optional<MultiplicityVector> multiplicities() const;
};

/// Assigns each eigenvalue of A to its nearest net point (ties to the smaller
/// point) and reports the resulting block-diagonal model distance.
BucketReport bucket_spectrum(const HermitianMatrix& a, const SpectralNet& net, double omega);
BucketReport bucket_eigenvalues(std::span<const double> ascending_eigs, std::span<const double> net_points,
                                double omega);

/// Eigenvalue partition around block targets: s_j counts the indices of block
/// j whose eigenvalue lies within `half_width` of targets[j]; the last entry
/// is the remainder. Defaults: targets 1..m, half_width 1/m.
std::vector<int> eigenvalue_partition(std::span<const double> ascending_eigs, const MultiplicityVector& blocks,
                                      int m, std::optional<RealVector> targets = std::nullopt,
                                      std::optional<double> half_width = std::nullopt);

/// Lexicographic enumeration of compositions of k into n positive parts.
class CompositionRange {
 public:
  CompositionRange(int k, int n);

  class iterator {
   public:
    using value_type = MultiplicityVector;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(std::vector<int> parts, bool done) : parts_(std::move(parts)), done_(done) {}

    MultiplicityVector operator*() const { return MultiplicityVector(parts_); }
    const std::vector<int>& parts() const noexcept { return parts_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& other) const { return done_ == other.done_ && (done_ || parts_ == other.parts_); }

   private:
    std::vector<int> parts_;
    bool done_ = true;
  };

  iterator begin() const;
  iterator end() const { return {}; }
  /// binomial(k-1, n-1); throws InfeasibleRequest on 64-bit overflow.
  std::uint64_t count() const;

 private:
  int k_;
  int n_;
};

/// Throws ConfigError when n > k or n < 1.
CompositionRange enumerate_multiplicity_vectors(int k, int n);

/// binomial(n, r) exactly; throws InfeasibleRequest on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);
/// log binomial(n, r), accurate for very large n.
double log_binomial(double n, double r);

}  // namespace fedlab
