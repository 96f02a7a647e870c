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

#include <cstdint>
#include <optional>

#include "unidioph/linalg.hpp"

namespace unidioph {

// phi(A) = sup |Ax - x|_2 over unit vectors x, in [0, 2].
struct DisplacementValue {
  double value = 0.0;
  // A unit vector attaining the sup: |A w - w|_2 == value.
  std::optional<ComplexVector> witness;
};

// phi(A)^2 = 2 - 2 min Re(eigenvalue) = 2 * lambda_max(I - (A + A*)/2). The
// Hermitian matrix is formed as (A - I)*(A - I)/2, which is the same matrix on
// U(N) but keeps full relative accuracy near the identity. The witness is its
// top eigenvector.
DisplacementValue phi_unitary(const UnitaryMatrix& a);

// Same value without the certificate or witness; the search loops call this on
// raw products of certified powers.
double phi_value(const ComplexMatrix& a);

// Max of |Ax - x|_2 over the requested number of unit vectors drawn uniformly from the
// complex sphere (normalized complex Gaussians). Deterministic per seed.
double phi_empirical(const UnitaryMatrix& a, std::uint64_t samples, std::uint64_t seed);

// rho(A, B) = phi(A B*), a bi-invariant metric on U(N); computed as the
// operator norm of A - B, so rho(A, A) is exactly 0.
double rho(const UnitaryMatrix& a, const UnitaryMatrix& b);

}  // namespace unidioph
