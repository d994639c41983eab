#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace fedlab {

/// A reproducible random stream identified by (seed, stream_id).
///
/// Every stream owns its own engine, seeded from both words, so workers that
/// draw from distinct stream ids never share state and produce the same
/// numbers regardless of scheduling. `counter` is the number of 64-bit words
/// consumed so far; constructing with a nonzero counter fast-forwards to the
/// same position.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t counter() const noexcept { return counter_; }

  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() {
    ++counter_;
    return engine_();
  }

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::mt19937_64 engine_;
};

}  // namespace fedlab
