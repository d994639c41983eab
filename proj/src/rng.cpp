#include "fedlab/rng.hpp"

namespace fedlab {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {
  engine_.discard(counter);
  counter_ = counter;
}

double RngStream::uniform() {
  // 53 random mantissa bits.
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t n) {
  std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
  return dist(*this);
}

double RngStream::normal() {
  // A fresh distribution per draw: no cached second variate, so the stream
  // position is fully described by the counter.
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(*this);
}

}  // namespace fedlab
