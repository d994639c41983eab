#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fedlab/linalg.hpp"
#include "fedlab/rng.hpp"

namespace fedlab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const noexcept { return hi - lo; }
};

/// Strictly increasing list of reals.
struct FiniteSet {
  RealVector values;
};

/// Disjoint closed intervals in increasing order; a zero-length interval is a point.
struct IntervalUnion {
  std::vector<Interval> intervals;
};

/// Self-similar Cantor set: each interval keeps its two outer pieces of
/// relative length `ratio`. `depth` is the construction level the set is
/// resolved to: it is represented by the left endpoints of its 2^depth
/// level-`depth` intervals, all of which lie in the limit set.
struct CantorSet {
  Interval base;
  double ratio = 1.0 / 3.0;
  int depth = 0;
};

/// A compact nonempty subset of R standing in for the spectrum of a
/// self-adjoint element.
class SpectrumSpec {
 public:
  using Variant = std::variant<FiniteSet, IntervalUnion, CantorSet>;

  explicit SpectrumSpec(Variant v, std::optional<double> resolution = std::nullopt);

  static SpectrumSpec finite(RealVector values);
  static SpectrumSpec interval(double lo, double hi, std::optional<double> resolution = std::nullopt);
  static SpectrumSpec cantor(double lo, double hi, double ratio, int depth);

  const Variant& variant() const noexcept { return v_; }
  std::optional<double> resolution() const noexcept { return resolution_; }

  bool is_finite() const;
  /// Number of points for finite variants, nullopt when infinite.
  std::optional<std::size_t> cardinality() const;
  double min_value() const;
  double max_value() const;
  double diameter() const { return max_value() - min_value(); }
  double spectral_radius() const;
  /// Smallest gap between distinct points of a finite spectrum; nullopt for
  /// singletons and infinite spectra.
  std::optional<double> min_gap() const;
  /// Points of a finite spectrum; throws InfeasibleRequest otherwise.
  RealVector finite_points() const;

  /// Grid pitch used for interval unions: the configured resolution, or
  /// omega/20 when none is set.
  double pitch_for(double omega) const;

  std::string to_string() const;

 private:
  Variant v_;
  std::optional<double> resolution_;
};

/// Parse `finite:0,1,2`, `interval:0..1[,2..3][,resolution=1e-3]`,
/// `cantor:0..1,ratio=0.333,depth=8`. Numbers may be written as fractions
/// (`1/3`). Throws ConfigError.
SpectrumSpec parse_spectrum(std::string_view text);

/// Ascending sample points of K: finite sets verbatim, intervals on a uniform
/// grid of pitch <= `pitch` including both endpoints, Cantor sets by their
/// level-`depth` left endpoints.
RealVector discretize(const SpectrumSpec& k, double pitch);
/// Discretization with the default pitch for omega-free operations.
RealVector discretize(const SpectrumSpec& k);

/// omega-separated omega-dense subset of K.
struct SpectralNet {
  RealVector points;
  double omega = 0.0;
};

/// Maximal cardinality of a subset of (the discretization of) K with pairwise
/// distances >= omega. Throws ConfigError when omega <= 0.
std::size_t packing_number(const SpectrumSpec& k, double omega);
/// Same count on an explicit ascending point list.
std::size_t packing_number(std::span<const double> ascending, double omega);

/// Greedy ascending sweep: keep the smallest point, then every point at
/// distance >= omega from the last kept one.
SpectralNet separated_net(const SpectrumSpec& k, double omega);
SpectralNet separated_net(std::span<const double> ascending, double omega);

/// `count` points drawn uniformly from the discretization of K.
RealVector sample_points(const SpectrumSpec& k, std::size_t count, RngStream& stream);

/// True when a >= omega under the closed comparison used for separation,
/// allowing for roundoff in the coordinates.
bool separated(double a, double b, double omega);

}  // namespace fedlab
