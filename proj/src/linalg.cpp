#include "fedlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fedlab/error.hpp"

namespace fedlab {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + ": expected a non-empty square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(ComplexMatrix entries) {
  require_square(entries, "HermitianMatrix");
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance) {
    throw ConfigError("HermitianMatrix: matrix is not self-adjoint (max |A - A*| = " +
                      std::to_string(asym) + ")");
  }
  m_ = (entries + entries.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::hermitize(const ComplexMatrix& m) {
  require_square(m, "HermitianMatrix::hermitize");
  return HermitianMatrix(Trusted{}, (m + m.adjoint()) * 0.5);
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  if (values.empty()) throw DimensionMismatch("HermitianMatrix::diagonal: empty diagonal");
  const auto k = static_cast<Eigen::Index>(values.size());
  ComplexMatrix m = ComplexMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return HermitianMatrix(Trusted{}, std::move(m));
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index k) {
  if (k < 1) throw DimensionMismatch("HermitianMatrix::identity: k must be >= 1");
  return HermitianMatrix(Trusted{}, ComplexMatrix::Identity(k, k));
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index k) {
  if (k < 1) throw DimensionMismatch("HermitianMatrix::zero: k must be >= 1");
  return HermitianMatrix(Trusted{}, ComplexMatrix::Zero(k, k));
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries) {
  require_square(entries, "UnitaryMatrix");
  const auto k = entries.rows();
  const ComplexMatrix defect = entries * entries.adjoint() - ComplexMatrix::Identity(k, k);
  if (op_norm(defect) > kUnitaryTolerance) {
    throw ConfigError("UnitaryMatrix: matrix is not unitary");
  }
  m_ = std::move(entries);
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index k) {
  if (k < 1) throw DimensionMismatch("UnitaryMatrix::identity: k must be >= 1");
  return UnitaryMatrix(Trusted{}, ComplexMatrix::Identity(k, k));
}

UnitaryMatrix UnitaryMatrix::permutation(std::span<const int> perm) {
  const auto k = static_cast<Eigen::Index>(perm.size());
  if (k < 1) throw DimensionMismatch("UnitaryMatrix::permutation: empty permutation");
  std::vector<bool> seen(perm.size(), false);
  ComplexMatrix m = ComplexMatrix::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const int target = perm[static_cast<std::size_t>(j)];
    if (target < 0 || target >= k || seen[static_cast<std::size_t>(target)]) {
      throw ConfigError("UnitaryMatrix::permutation: not a permutation");
    }
    seen[static_cast<std::size_t>(target)] = true;
    m(target, j) = 1.0;
  }
  return UnitaryMatrix(Trusted{}, std::move(m));
}

double op_norm(const HermitianMatrix& a) {
  const RealVector eigs = eig_sorted(a);
  return std::max(std::abs(eigs.front()), std::abs(eigs.back()));
}

double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double op_norm(std::span<const HermitianMatrix> tuple) {
  double best = 0.0;
  for (const auto& a : tuple) best = std::max(best, op_norm(a));
  return best;
}

double hs_norm(const ComplexMatrix& a) {
  if (a.rows() == 0) return 0.0;
  return a.norm() / std::sqrt(static_cast<double>(a.rows()));
}

double hs_norm(const HermitianMatrix& a) { return hs_norm(a.entries()); }

double hs_norm(std::span<const HermitianMatrix> tuple) {
  double sum = 0.0;
  for (const auto& a : tuple) {
    const double n = hs_norm(a);
    sum += n * n;
  }
  return std::sqrt(sum);
}

RealVector eig_sorted(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigenSolverError(a.dim());
  const auto& ev = solver.eigenvalues();
  return RealVector(ev.data(), ev.data() + ev.size());
}

EigenDecomposition eig_decompose(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.entries(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw EigenSolverError(a.dim());
  const auto& ev = solver.eigenvalues();
  return {RealVector(ev.data(), ev.data() + ev.size()), solver.eigenvectors()};
}

UnitaryMatrix haar_unitary(Eigen::Index k, RngStream& stream) {
  if (k < 1) throw DimensionMismatch("haar_unitary: k must be >= 1");
  ComplexMatrix z(k, k);
  const double scale = std::sqrt(0.5);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      const double re = stream.normal();
      const double im = stream.normal();
      z(i, j) = Complex(re, im) * scale;
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < k; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return UnitaryMatrix(UnitaryMatrix::Trusted{}, std::move(q));
}

UnitaryMatrix polar_unitary(const ComplexMatrix& m) {
  require_square(m, "polar_unitary");
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return UnitaryMatrix(UnitaryMatrix::Trusted{}, svd.matrixU() * svd.matrixV().adjoint());
}

HermitianMatrix conjugate(const HermitianMatrix& a, const UnitaryMatrix& u) {
  require_same_dim(a.dim(), u.dim(), "conjugate");
  return HermitianMatrix::hermitize(u.entries().adjoint() * a.entries() * u.entries());
}

HermitianTuple conjugate(std::span<const HermitianMatrix> tuple, const UnitaryMatrix& u) {
  HermitianTuple out;
  out.reserve(tuple.size());
  for (const auto& a : tuple) out.push_back(conjugate(a, u));
  return out;
}

HermitianMatrix difference(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "difference");
  return HermitianMatrix::hermitize(a.entries() - b.entries());
}

}  // namespace fedlab
