#include "fedlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fedlab/error.hpp"
#include "parse_util.hpp"

namespace fedlab {

namespace {

constexpr std::size_t kMaxDiscretizationPoints = 50'000'000;
constexpr int kMaxCantorDepth = 25;

void validate(const FiniteSet& f) {
  if (f.values.empty()) throw ConfigError("finite spectrum: empty set");
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!std::isfinite(f.values[i])) throw ConfigError("finite spectrum: non-finite value");
    if (i > 0 && !(f.values[i] > f.values[i - 1])) {
      throw ConfigError("finite spectrum: values must be strictly increasing");
    }
  }
}

void validate(const IntervalUnion& u) {
  if (u.intervals.empty()) throw ConfigError("interval spectrum: no intervals");
  for (std::size_t i = 0; i < u.intervals.size(); ++i) {
    const auto& iv = u.intervals[i];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.hi < iv.lo) {
      throw ConfigError("interval spectrum: each interval needs finite lo <= hi");
    }
    if (i > 0 && !(iv.lo > u.intervals[i - 1].hi)) {
      throw ConfigError("interval spectrum: intervals must be disjoint and increasing");
    }
  }
}

void validate(const CantorSet& c) {
  if (!std::isfinite(c.base.lo) || !std::isfinite(c.base.hi) || c.base.hi < c.base.lo) {
    throw ConfigError("cantor spectrum: base interval needs finite lo <= hi");
  }
  if (!(c.ratio > 0.0 && c.ratio < 0.5)) throw ConfigError("cantor spectrum: ratio must lie in (0, 1/2)");
  if (c.depth < 0 || c.depth > kMaxCantorDepth) {
    throw ConfigError("cantor spectrum: depth must lie in [0, " + std::to_string(kMaxCantorDepth) + "]");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

RealVector cantor_left_endpoints(const CantorSet& c) {
  RealVector pts{c.base.lo};
  double len = c.base.length();
  for (int level = 0; level < c.depth; ++level) {
    const double shift = (1.0 - c.ratio) * len;
    RealVector next;
    next.reserve(pts.size() * 2);
    for (double p : pts) {
      next.push_back(p);
      next.push_back(p + shift);
    }
    pts = std::move(next);
    len *= c.ratio;
  }
  return pts;
}

double default_pitch(const SpectrumSpec& k) {
  if (k.resolution()) return *k.resolution();
  const double d = k.diameter();
  return d > 0.0 ? d / 2000.0 : 1e-3;
}

Interval parse_range(std::string_view s, std::string_view context) {
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) {
    throw ConfigError(std::string(context) + ": expected 'lo..hi', got '" + std::string(s) + "'");
  }
  return {detail::parse_number(s.substr(0, dots), context),
          detail::parse_number(s.substr(dots + 2), context)};
}

}  // namespace

SpectrumSpec::SpectrumSpec(Variant v, std::optional<double> resolution)
    : v_(std::move(v)), resolution_(resolution) {
  std::visit([](const auto& x) { validate(x); }, v_);
  if (resolution_ && !(*resolution_ > 0.0)) throw ConfigError("spectrum: resolution must be > 0");
}

SpectrumSpec SpectrumSpec::finite(RealVector values) { return SpectrumSpec(FiniteSet{std::move(values)}); }

SpectrumSpec SpectrumSpec::interval(double lo, double hi, std::optional<double> resolution) {
  return SpectrumSpec(IntervalUnion{{Interval{lo, hi}}}, resolution);
}

SpectrumSpec SpectrumSpec::cantor(double lo, double hi, double ratio, int depth) {
  return SpectrumSpec(CantorSet{Interval{lo, hi}, ratio, depth});
}

bool SpectrumSpec::is_finite() const { return cardinality().has_value(); }

std::optional<std::size_t> SpectrumSpec::cardinality() const {
  return std::visit(Overloaded{
                        [](const FiniteSet& f) -> std::optional<std::size_t> { return f.values.size(); },
                        [](const IntervalUnion& u) -> std::optional<std::size_t> {
                          for (const auto& iv : u.intervals) {
                            if (iv.length() > 0.0) return std::nullopt;
                          }
                          return u.intervals.size();
                        },
                        [](const CantorSet& c) -> std::optional<std::size_t> {
                          if (c.base.length() > 0.0) return std::nullopt;
                          return 1;
                        },
                    },
                    v_);
}

double SpectrumSpec::min_value() const {
  return std::visit(Overloaded{
                        [](const FiniteSet& f) { return f.values.front(); },
                        [](const IntervalUnion& u) { return u.intervals.front().lo; },
                        [](const CantorSet& c) { return c.base.lo; },
                    },
                    v_);
}

double SpectrumSpec::max_value() const {
  return std::visit(Overloaded{
                        [](const FiniteSet& f) { return f.values.back(); },
                        [](const IntervalUnion& u) { return u.intervals.back().hi; },
                        [](const CantorSet& c) { return c.base.hi; },
                    },
                    v_);
}

double SpectrumSpec::spectral_radius() const {
  return std::max(std::abs(min_value()), std::abs(max_value()));
}

std::optional<double> SpectrumSpec::min_gap() const {
  if (!is_finite()) return std::nullopt;
  const RealVector pts = finite_points();
  if (pts.size() < 2) return std::nullopt;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < pts.size(); ++i) gap = std::min(gap, pts[i] - pts[i - 1]);
  return gap;
}

RealVector SpectrumSpec::finite_points() const {
  if (!is_finite()) throw InfeasibleRequest("spectrum " + to_string() + " is not a finite set");
  return std::visit(Overloaded{
                        [](const FiniteSet& f) { return f.values; },
                        [](const IntervalUnion& u) {
                          RealVector pts;
                          for (const auto& iv : u.intervals) pts.push_back(iv.lo);
                          return pts;
                        },
                        [](const CantorSet& c) { return RealVector{c.base.lo}; },
                    },
                    v_);
}

double SpectrumSpec::pitch_for(double omega) const {
  if (resolution_) return *resolution_;
  return omega / 20.0;
}

std::string SpectrumSpec::to_string() const {
  using detail::format_number;
  std::string out = std::visit(
      Overloaded{
          [](const FiniteSet& f) {
            std::string s = "finite:";
            for (std::size_t i = 0; i < f.values.size(); ++i) {
              if (i) s += ',';
              s += format_number(f.values[i]);
            }
            return s;
          },
          [](const IntervalUnion& u) {
            std::string s = "interval:";
            for (std::size_t i = 0; i < u.intervals.size(); ++i) {
              if (i) s += ',';
              s += format_number(u.intervals[i].lo) + ".." + format_number(u.intervals[i].hi);
            }
            return s;
          },
          [](const CantorSet& c) {
            return "cantor:" + format_number(c.base.lo) + ".." + format_number(c.base.hi) +
                   ",ratio=" + format_number(c.ratio) + ",depth=" + std::to_string(c.depth);
          },
      },
      v_);
  if (resolution_) out += ",resolution=" + format_number(*resolution_);
  return out;
}

SpectrumSpec parse_spectrum(std::string_view text) {
  text = detail::trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("spectrum: expected 'finite:...', 'interval:...' or 'cantor:...', got '" +
                      std::string(text) + "'");
  }
  const auto kind = detail::trim(text.substr(0, colon));
  const auto body = text.substr(colon + 1);
  std::optional<double> resolution;

  if (kind == "finite") {
    RealVector values;
    for (auto item : detail::split(body, ',')) values.push_back(detail::parse_number(item, "finite spectrum"));
    std::sort(values.begin(), values.end());
    if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
      throw ConfigError("finite spectrum: repeated value");
    }
    return SpectrumSpec(FiniteSet{std::move(values)});
  }

  if (kind == "interval") {
    IntervalUnion u;
    for (auto item : detail::split(body, ',')) {
      if (item.starts_with("resolution=")) {
        resolution = detail::parse_number(item.substr(11), "interval spectrum resolution");
      } else {
        u.intervals.push_back(parse_range(item, "interval spectrum"));
      }
    }
    std::sort(u.intervals.begin(), u.intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    return SpectrumSpec(std::move(u), resolution);
  }

  if (kind == "cantor") {
    const auto items = detail::split(body, ',');
    CantorSet c{parse_range(items.front(), "cantor spectrum"), 1.0 / 3.0, 8};
    for (std::size_t i = 1; i < items.size(); ++i) {
      const auto item = items[i];
      if (item.starts_with("ratio=")) {
        c.ratio = detail::parse_number(item.substr(6), "cantor ratio");
      } else if (item.starts_with("depth=")) {
        c.depth = static_cast<int>(detail::parse_integer(item.substr(6), "cantor depth"));
      } else {
        throw ConfigError("cantor spectrum: unknown field '" + std::string(item) + "'");
      }
    }
    return SpectrumSpec(c);
  }

  throw ConfigError("spectrum: unknown kind '" + std::string(kind) + "'");
}

RealVector discretize(const SpectrumSpec& k, double pitch) {
  if (!(pitch > 0.0)) throw ConfigError("discretize: pitch must be > 0");
  return std::visit(
      Overloaded{
          [](const FiniteSet& f) { return f.values; },
          [pitch](const IntervalUnion& u) {
            RealVector pts;
            for (const auto& iv : u.intervals) {
              const double len = iv.length();
              if (len == 0.0) {
                pts.push_back(iv.lo);
                continue;
              }
              const double steps = std::ceil(len / pitch * (1.0 - 1e-12));
              if (steps + static_cast<double>(pts.size()) > kMaxDiscretizationPoints) {
                throw InfeasibleRequest("discretize: grid pitch too fine for interval spectrum");
              }
              const auto n = static_cast<std::size_t>(std::max(1.0, steps));
              for (std::size_t i = 0; i < n; ++i) {
                pts.push_back(iv.lo + len * static_cast<double>(i) / static_cast<double>(n));
              }
              pts.push_back(iv.hi);
            }
            return pts;
          },
          [](const CantorSet& c) {
            if (c.base.length() == 0.0) return RealVector{c.base.lo};
            return cantor_left_endpoints(c);
          },
      },
      k.variant());
}

RealVector discretize(const SpectrumSpec& k) { return discretize(k, default_pitch(k)); }

bool separated(double a, double b, double omega) {
  const double scale = std::max(std::abs(a), std::abs(b));
  const double slack = 1e-12 * omega + 8.0 * std::numeric_limits<double>::epsilon() * scale;
  return std::abs(a - b) >= omega - slack;
}

SpectralNet separated_net(std::span<const double> ascending, double omega) {
  if (!(omega > 0.0)) throw ConfigError("separated_net: omega must be > 0");
  SpectralNet net{{}, omega};
  for (double p : ascending) {
    if (net.points.empty() || separated(p, net.points.back(), omega)) net.points.push_back(p);
  }
  return net;
}

SpectralNet separated_net(const SpectrumSpec& k, double omega) {
  if (!(omega > 0.0)) throw ConfigError("separated_net: omega must be > 0");
  const RealVector pts = discretize(k, k.pitch_for(omega));
  return separated_net(pts, omega);
}

std::size_t packing_number(std::span<const double> ascending, double omega) {
  // In one dimension the ascending greedy sweep attains the maximum.
  return separated_net(ascending, omega).points.size();
}

std::size_t packing_number(const SpectrumSpec& k, double omega) {
  if (!(omega > 0.0)) throw ConfigError("packing_number: omega must be > 0");
  return separated_net(k, omega).points.size();
}

RealVector sample_points(const SpectrumSpec& k, std::size_t count, RngStream& stream) {
  if (count < 1) throw ConfigError("sample_points: count must be >= 1");
  const RealVector pts = discretize(k);
  RealVector out(count);
  for (auto& x : out) x = pts[static_cast<std::size_t>(stream.below(pts.size()))];
  return out;
}

}  // namespace fedlab
