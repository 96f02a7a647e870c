// Copyright 2026 The unidioph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unidioph/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "unidioph/errors.hpp"

namespace unidioph {

namespace {

constexpr double kNewtonTolerance = 1e-14;
constexpr int kNewtonMaxIterations = 50;
constexpr long long kMaxPower = 1'000'000;

}  // namespace

NotUnitary::NotUnitary(double residual, double tol)
    : Error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "matrix is not unitary: residual " << residual << " exceeds " << tol;
        return os.str();
      }()),
      residual_(residual) {}

Complex unit_phase(double x) {
  const double angle = 2.0 * std::numbers::pi * x;
  return {std::cos(angle), std::sin(angle)};
}

void require_square_finite(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionError("matrix must be square and non-empty, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (m.rows() > kMaxDimension) {
    throw DimensionError("dimension " + std::to_string(m.rows()) + " exceeds 64");
  }
  if (!m.allFinite()) throw NonFiniteEntry("matrix has a NaN or infinite entry");
}

double unitarity_residual(const ComplexMatrix& m) {
  const ComplexMatrix gram = m.adjoint() * m;
  return (gram - ComplexMatrix::Identity(m.rows(), m.cols())).norm();
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index n) {
  if (n < 1 || n > kMaxDimension) throw DimensionError("identity dimension out of range");
  return {ComplexMatrix::Identity(n, n), 0.0};
}

UnitaryMatrix UnitaryMatrix::diagonal(std::span<const double> angles) {
  if (angles.empty()) throw DimensionError("diagonal matrix needs at least one angle");
  ComplexMatrix m = ComplexMatrix::Zero(angles.size(), angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) m(i, i) = unit_phase(angles[i]);
  return check_unitary(m);
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  ComplexMatrix adj = matrix_.adjoint();
  const double residual = unitarity_residual(adj);
  return {std::move(adj), residual};
}

UnitaryMatrix UnitaryMatrix::certify_drifting(ComplexMatrix m) {
  const double residual = unitarity_residual(m);
  if (residual > 0.5 * unitarity_tolerance(m.rows())) return reunitarize(m);
  return {std::move(m), residual};
}

UnitaryMatrix check_unitary(const ComplexMatrix& m, double tol) {
  require_square_finite(m);
  const double residual = unitarity_residual(m);
  if (residual > tol) throw NotUnitary(residual, tol);
  return {m, residual};
}

UnitaryMatrix reunitarize(const ComplexMatrix& m) {
  require_square_finite(m);
  const auto n = m.rows();
  const double target = kNewtonTolerance * static_cast<double>(n);
  ComplexMatrix x = m;
  double residual = unitarity_residual(x);
  if (residual >= 0.1) {
    throw DomainError("reunitarize needs a nearly unitary input (residual < 0.1)");
  }
  for (int iter = 0; residual > target; ++iter) {
    if (iter == kNewtonMaxIterations) {
      throw ConvergenceFailure("polar projection did not converge in 50 iterations");
    }
    const ComplexMatrix inverse_adjoint = x.inverse().adjoint();
    x = 0.5 * (x + inverse_adjoint);
    residual = unitarity_residual(x);
  }
  return {std::move(x), residual};
}

UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("multiply: dimension mismatch");
  return UnitaryMatrix::certify_drifting(a.matrix() * b.matrix());
}

UnitaryMatrix matrix_power(const UnitaryMatrix& a, long long k) {
  if (std::llabs(k) > kMaxPower) throw DomainError("matrix_power: |k| must be <= 1e6");
  UnitaryMatrix result = UnitaryMatrix::identity(a.dim());
  if (k == 0) return result;
  UnitaryMatrix base = k > 0 ? a : a.adjoint();
  unsigned long long e = static_cast<unsigned long long>(std::llabs(k));
  bool first = true;
  while (true) {
    if (e & 1ULL) {
      result = first ? base : multiply(result, base);
      first = false;
    }
    e >>= 1;
    if (e == 0) break;
    base = multiply(base, base);
  }
  return result;
}

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  require_square_finite(m);
  const double skew = (m - m.adjoint()).norm();
  if (skew > 1e-10 * static_cast<double>(m.rows())) {
    std::ostringstream os;
    os << "matrix is not Hermitian: ||M - M*||_F = " << skew;
    throw DomainError(os.str());
  }
  return 0.5 * (m + m.adjoint());
}

}  // namespace

HermitianEigenpair hermitian_min_eigen(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw EigensolverFailure("Hermitian eigensolver failed");
  // Eigenvalues come back in ascending order.
  ComplexVector v = solver.eigenvectors().col(0);
  v.normalize();
  return {solver.eigenvalues()(0), std::move(v)};
}

double hermitian_min_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigensolverFailure("Hermitian eigensolver failed");
  return solver.eigenvalues()(0);
}

double reduce_half_open(double x) {
  double r = x - std::floor(x);  // [0, 1]
  if (r > 0.5) r -= 1.0;
  if (r <= -0.5) r += 1.0;
  return r;
}

EigenvalueSet::EigenvalueSet(std::vector<double> angles) : angles_(std::move(angles)) {
  for (double& x : angles_) x = reduce_half_open(x);
  std::sort(angles_.begin(), angles_.end());
}

std::vector<Complex> EigenvalueSet::values() const {
  std::vector<Complex> out;
  out.reserve(angles_.size());
  for (double x : angles_) out.push_back(unit_phase(x));
  return out;
}

EigenvalueSet unitary_eigen_angles(const UnitaryMatrix& a) {
  const ComplexMatrix& m = a.matrix();
  const auto n = m.rows();
  Eigen::ComplexSchur<ComplexMatrix> schur(m, true);
  if (schur.info() != Eigen::Success) throw EigensolverFailure("Schur decomposition failed");
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();

  std::vector<double> angles(static_cast<std::size_t>(n));
  ComplexVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = std::arg(t(i, i)) / (2.0 * std::numbers::pi);
    angles[static_cast<std::size_t>(i)] = x;
    phases(i) = unit_phase(x);
  }
  const double reconstruction = (m - u * phases.asDiagonal() * u.adjoint()).norm();
  if (!(reconstruction <= 1e-8 * static_cast<double>(n))) {
    std::ostringstream os;
    os << "eigen-angle reconstruction error " << reconstruction << " too large";
    throw EigensolverFailure(os.str());
  }
  return EigenvalueSet(std::move(angles));
}

}  // namespace unidioph
