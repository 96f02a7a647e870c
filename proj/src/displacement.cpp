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

#include "unidioph/displacement.hpp"

#include <algorithm>
#include <cmath>

#include "unidioph/errors.hpp"
#include "unidioph/rng.hpp"

namespace unidioph {

namespace {

// For unitary A, (A - I)*(A - I) = 2I - A - A*, so the Gram matrix
// D*D / 2 with D = A - I equals I - (A + A*)/2 and its top eigenvalue is
// phi(A)^2 / 2. Forming it from D keeps full relative accuracy near the
// identity and vanishes exactly at A = I.
ComplexMatrix half_gram(const ComplexMatrix& d) { return 0.5 * (d.adjoint() * d); }

double phi_from_lambda_max(double lambda_max) {
  return std::sqrt(std::clamp(2.0 * lambda_max, 0.0, 4.0));
}

double top_displacement(const ComplexMatrix& d) {
  if (d.rows() == 1) return std::min(std::abs(d(0, 0)), 2.0);
  // lambda_max(H) = -lambda_min(-H).
  return phi_from_lambda_max(-hermitian_min_eigenvalue(-half_gram(d)));
}

}  // namespace

double phi_value(const ComplexMatrix& a) {
  const auto n = a.rows();
  return top_displacement(a - ComplexMatrix::Identity(n, n));
}

DisplacementValue phi_unitary(const UnitaryMatrix& a) {
  const auto n = a.dim();
  if (n == 1) {
    // Every unit vector of C^1 is a phase and is moved by exactly |a - 1|.
    return {top_displacement(a.matrix() - ComplexMatrix::Identity(1, 1)), ComplexVector::Ones(1)};
  }
  HermitianEigenpair pair =
      hermitian_min_eigen(-half_gram(a.matrix() - ComplexMatrix::Identity(n, n)));
  return {phi_from_lambda_max(-pair.value), std::move(pair.vector)};
}

double phi_empirical(const UnitaryMatrix& a, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("phi_empirical needs at least one sample");
  const ComplexMatrix& m = a.matrix();
  const auto n = m.rows();
  const ComplexMatrix diff = m - ComplexMatrix::Identity(n, n);
  if (n == 1) return top_displacement(diff);
  CounterRng rng(seed);
  ComplexVector x(n);
  double best = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.complex_normal();
    const double norm = x.norm();
    if (norm == 0.0) continue;
    best = std::max(best, (diff * x).norm() / norm);
  }
  return best;
}

double rho(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("rho: dimension mismatch");
  // |A B* x - x| = |(A - B) B* x|, so rho(A, B) is the operator norm of A - B.
  return top_displacement(a.matrix() - b.matrix());
}

}  // namespace unidioph
