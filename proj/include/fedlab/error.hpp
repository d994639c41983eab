#pragma once

#include <stdexcept>
#include <string>

namespace fedlab {

/// Malformed input: bad config keys, unparsable text forms, violated preconditions.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request that the library cannot satisfy, e.g. exact orbit
/// counts for a spectrum with infinitely many points.
class InfeasibleRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EigenSolverError : public std::runtime_error {
 public:
  explicit EigenSolverError(long dim)
      : std::runtime_error("Hermitian eigensolver did not converge (dim=" +
                           std::to_string(dim) + ")"),
        dim_(dim) {}
  long dim() const noexcept { return dim_; }

 private:
  long dim_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fedlab
