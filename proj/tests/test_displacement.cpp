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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "unidioph/displacement.hpp"
#include "unidioph/errors.hpp"
#include "unidioph/haar.hpp"

using namespace unidioph;

namespace {

UnitaryMatrix diag_angles(std::initializer_list<double> xs) {
  const std::vector<double> v(xs);
  return UnitaryMatrix::diagonal(v);
}

}  // namespace

TEST_CASE("phi_unitary on fixed matrices") {
  for (Eigen::Index n = 1; n <= 5; ++n) CHECK(phi_unitary(UnitaryMatrix::identity(n)).value == 0.0);
  CHECK(std::abs(phi_unitary(diag_angles({0.5, 0.5})).value - 2.0) < 1e-15);
  CHECK(std::abs(phi_unitary(diag_angles({0.25, 0.0})).value - std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("sampled unit vectors approach sqrt(2) from below for diag(i, 1)") {
  const UnitaryMatrix a = diag_angles({0.25, 0.0});
  const double sampled = phi_empirical(a, 1000000, 3);
  CHECK(sampled <= std::sqrt(2.0) + 1e-12);
  CHECK(sampled > std::sqrt(2.0) - 1e-3);
}

TEST_CASE("phi_empirical") {
  CHECK(phi_empirical(UnitaryMatrix::identity(2), 10, 1) == 0.0);
  CHECK(std::abs(phi_empirical(diag_angles({0.5, 0.5}), 1, 9) - 2.0) < 1e-14);
  const double v = phi_empirical(diag_angles({0.25, 0.0}), 100000, 7);
  CHECK(v >= 1.40);
  CHECK(v <= std::sqrt(2.0) + 1e-9);
  CHECK_THROWS_AS(phi_empirical(UnitaryMatrix::identity(2), 0, 1), DomainError);
}

TEST_CASE("witness attains phi") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Eigen::Index n = 1 + s % 6;
    const UnitaryMatrix a = haar_sample(n, s);
    const DisplacementValue v = phi_unitary(a);
    REQUIRE(v.witness.has_value());
    const ComplexVector& w = *v.witness;
    CHECK(std::abs(w.norm() - 1.0) < 1e-12);
    CHECK(std::abs((a.matrix() * w - w).norm() - v.value) < 1e-9);
    // Independent route: general eigensolver, sqrt(2 - 2 min Re alpha).
    CHECK(std::abs(v.value - oracle::phi_from_eigenvalues(a.matrix())) < 1e-9);
  }
}

TEST_CASE("phi near the identity keeps relative accuracy") {
  // diag(e(eps)): phi = 2 sin(pi eps); the naive 2 - 2 Re route loses
  // everything below eps ~ 1e-8.
  for (double eps : {1e-4, 1e-7, 1e-10}) {
    const double expected = 2.0 * std::sin(std::numbers::pi * eps);
    const double got = phi_unitary(diag_angles({eps, 0.0, 0.0})).value;
    CHECK(std::abs(got - expected) <= 1e-6 * expected);
  }
}

TEST_CASE("rho") {
  const UnitaryMatrix a = haar_sample(3, 4);
  CHECK(rho(a, a) < 1e-7);
  CHECK(std::abs(rho(UnitaryMatrix::identity(2), diag_angles({0.5, 0.5})) - 2.0) < 1e-14);
  CHECK(std::abs(rho(diag_angles({1.0 / 8}), diag_angles({3.0 / 8})) - std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(rho(diag_angles({1.0 / 8}), diag_angles({3.0 / 8})) -
                 oracle::chord(1.0 / 8, 3.0 / 8)) < 1e-14);
  CHECK_THROWS_AS(rho(haar_sample(2, 1), haar_sample(3, 1)), DimensionError);
}

TEST_CASE("metric identities on random pairs") {
  for (Eigen::Index n = 1; n <= 3; ++n) {
    for (std::uint64_t s = 0; s < 300; ++s) {
      const UnitaryMatrix a = haar_sample(n, derive_seed(s, {1}));
      const UnitaryMatrix b = haar_sample(n, derive_seed(s, {2}));
      const UnitaryMatrix c = haar_sample(n, derive_seed(s, {3}));
      const double pa = phi_unitary(a).value, pb = phi_unitary(b).value;
      const double pab = phi_unitary(multiply(a, b.adjoint())).value;
      CHECK(std::abs(phi_unitary(a.adjoint()).value - pa) < 1e-10);
      CHECK(pab <= pa + pb + 1e-9);
      CHECK(std::abs(pa - pb) <= pab + 1e-9);
      CHECK(rho(a, c) <= rho(a, b) + rho(b, c) + 1e-9);
      CHECK(std::abs(phi_unitary(multiply(a, b)).value - phi_unitary(multiply(b, a)).value) < 1e-9);
      const UnitaryMatrix conj = multiply(multiply(c, a), c.adjoint());
      CHECK(std::abs(phi_unitary(conj).value - pa) < 1e-9);
      CHECK(pa <= 2.0);
    }
  }
}
