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

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace unidioph {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// e(x) = exp(2 pi i x).
Complex unit_phase(double x);

// Global unitarity tolerance: 1e-10 * N.
constexpr double unitarity_tolerance(Eigen::Index n) { return 1e-10 * static_cast<double>(n); }

// Largest dimension the library accepts.
constexpr Eigen::Index kMaxDimension = 64;

// Throws DimensionError unless m is square and non-empty, NonFiniteEntry on NaN/Inf.
void require_square_finite(const ComplexMatrix& m);

// ||M* M - I||_F.
double unitarity_residual(const ComplexMatrix& m);

/// An N x N unitary matrix together with its certified residual
/// ||A* A - I||_F <= unitarity_tolerance(N).
///
/// Instances only come out of check_unitary, reunitarize and the operations
/// built on them, so holding a UnitaryMatrix is proof that it was certified.
class UnitaryMatrix {
 public:
  static UnitaryMatrix identity(Eigen::Index n);
  // diag(e(x_1), ..., e(x_n)).
  static UnitaryMatrix diagonal(std::span<const double> angles);

  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  double residual() const { return residual_; }

  UnitaryMatrix adjoint() const;

 private:
  UnitaryMatrix(ComplexMatrix m, double residual)
      : matrix_(std::move(m)), residual_(residual) {}

  // Certify m, re-projecting it onto U(N) if it drifted beyond half the tolerance.
  static UnitaryMatrix certify_drifting(ComplexMatrix m);

  friend UnitaryMatrix check_unitary(const ComplexMatrix&, double);
  friend UnitaryMatrix reunitarize(const ComplexMatrix&);
  friend UnitaryMatrix multiply(const UnitaryMatrix&, const UnitaryMatrix&);
  friend UnitaryMatrix matrix_power(const UnitaryMatrix&, long long);

  ComplexMatrix matrix_;
  double residual_;
};

// Validates m and wraps it; NotUnitary when the residual exceeds tol.
UnitaryMatrix check_unitary(const ComplexMatrix& m, double tol);

// Certify with the default tolerance unitarity_tolerance(N).
inline UnitaryMatrix check_unitary(const ComplexMatrix& m) {
  return check_unitary(m, unitarity_tolerance(m.rows()));
}

/// Nearest unitary matrix (polar factor) by the Newton iteration
/// X <- (X + X^{-*}) / 2, stopped once ||X* X - I||_F <= 1e-14 * N.
/// Requires ||M* M - I||_F < 0.1; ConvergenceFailure after 50 steps.
UnitaryMatrix reunitarize(const ComplexMatrix& m);

// A * B, re-projected if the product drifted.
UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b);

// A^k by repeated squaring; A^{-1} = A*. Requires |k| <= 1e6.
UnitaryMatrix matrix_power(const UnitaryMatrix& a, long long k);

struct HermitianEigenpair {
  double value;
  ComplexVector vector;  // unit norm
};

// Smallest eigenvalue of (M + M*)/2 with its eigenvector. M must be Hermitian
// within 1e-10 * N in Frobenius norm.
HermitianEigenpair hermitian_min_eigen(const ComplexMatrix& m);

// Eigenvalue only.
double hermitian_min_eigenvalue(const ComplexMatrix& m);

/// Eigen-angles x_n in (-1/2, 1/2], sorted ascending, with e(x_n) the
/// eigenvalues of A.
class EigenvalueSet {
 public:
  explicit EigenvalueSet(std::vector<double> angles);

  const std::vector<double>& angles() const { return angles_; }
  std::vector<Complex> values() const;
  std::size_t size() const { return angles_.size(); }

 private:
  std::vector<double> angles_;
};

// Reduce x into (-1/2, 1/2].
double reduce_half_open(double x);

// Uses a complex Schur decomposition A = U T U*; for a normal matrix T is
// diagonal, so the diagonal projected onto the unit circle gives the
// eigenvalues. EigensolverFailure unless ||A - U diag(e(x)) U*||_F <= 1e-8 * N.
EigenvalueSet unitary_eigen_angles(const UnitaryMatrix& a);

}  // namespace unidioph
