#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fedlab/rng.hpp"

namespace fedlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = std::vector<double>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

/// k x k complex self-adjoint matrix. Construction checks the symmetry
/// entries[i][j] == conj(entries[j][i]) to within kHermitianTolerance and
/// then stores the exactly symmetrised value.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix entries);

  /// Symmetrises (M + M*)/2 without checking; for values that are Hermitian
  /// up to roundoff by construction.
  static HermitianMatrix hermitize(const ComplexMatrix& m);
  static HermitianMatrix diagonal(std::span<const double> values);
  static HermitianMatrix diagonal(std::initializer_list<double> values);
  static HermitianMatrix identity(Eigen::Index k);
  static HermitianMatrix zero(Eigen::Index k);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& entries() const noexcept { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  struct Trusted {};
  HermitianMatrix(Trusted, ComplexMatrix entries) : m_(std::move(entries)) {}

  ComplexMatrix m_;
};

/// k x k unitary matrix, U U* = I to within kUnitaryTolerance in operator norm.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix entries);
  static UnitaryMatrix identity(Eigen::Index k);
  /// Permutation matrix sending basis vector j to basis vector perm[j].
  static UnitaryMatrix permutation(std::span<const int> perm);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& entries() const noexcept { return m_; }

 private:
  struct Trusted {};
  UnitaryMatrix(Trusted, ComplexMatrix entries) : m_(std::move(entries)) {}
  friend UnitaryMatrix haar_unitary(Eigen::Index k, RngStream& stream);
  friend UnitaryMatrix polar_unitary(const ComplexMatrix& m);

  ComplexMatrix m_;
};

using HermitianTuple = std::vector<HermitianMatrix>;

/// Largest |eigenvalue|, the operator norm of a self-adjoint matrix.
double op_norm(const HermitianMatrix& a);
/// Largest singular value of an arbitrary square matrix.
double op_norm(const ComplexMatrix& a);
/// max_i ||A_i||.
double op_norm(std::span<const HermitianMatrix> tuple);

/// sqrt(Tr(A*A)/k); hs_norm(identity) == 1.
double hs_norm(const HermitianMatrix& a);
double hs_norm(const ComplexMatrix& a);
/// sqrt(sum_i tau_k(A_i* A_i)).
double hs_norm(std::span<const HermitianMatrix> tuple);

/// Ascending eigenvalues, each repeated per multiplicity. Throws
/// EigenSolverError when the solver fails to converge.
RealVector eig_sorted(const HermitianMatrix& a);

struct EigenDecomposition {
  RealVector values;  // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};
EigenDecomposition eig_decompose(const HermitianMatrix& a);

/// Haar-distributed sample on U(k): QR of a complex Ginibre matrix with the
/// diagonal of R rotated to the positive reals.
UnitaryMatrix haar_unitary(Eigen::Index k, RngStream& stream);

/// Unitary polar factor U V* of M = U S V*.
UnitaryMatrix polar_unitary(const ComplexMatrix& m);

/// U* A U, symmetrised to absorb roundoff. Throws DimensionMismatch.
HermitianMatrix conjugate(const HermitianMatrix& a, const UnitaryMatrix& u);
HermitianTuple conjugate(std::span<const HermitianMatrix> tuple, const UnitaryMatrix& u);

/// Difference of two Hermitian matrices of equal dimension.
HermitianMatrix difference(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace fedlab
