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
#include <vector>

#include "oracles.hpp"
#include "unidioph/displacement.hpp"
#include "unidioph/errors.hpp"
#include "unidioph/haar.hpp"

using namespace unidioph;

TEST_CASE("haar_sample is deterministic per seed") {
  for (Eigen::Index n : {1, 2, 5}) {
    CHECK(haar_sample(n, 77).matrix() == haar_sample(n, 77).matrix());
    CHECK(haar_sample(n, 77).matrix() != haar_sample(n, 78).matrix());
  }
}

TEST_CASE("U(1) Haar phases are uniform") {
  std::vector<double> xs;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const Complex z = haar_sample(1, s).matrix()(0, 0);
    xs.push_back(std::arg(z) / (2.0 * std::numbers::pi) + 0.5);
  }
  CHECK(oracle::ks_uniform(xs) < 0.02);
}

TEST_CASE("phi distribution is invariant under left translation") {
  // A Haar U and a fixed A0: UA0 is again Haar, so phi(UA0) has the law of phi(U).
  const UnitaryMatrix a0 = haar_sample(3, 123456);
  std::vector<double> plain, shifted;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const UnitaryMatrix u = haar_sample(3, derive_seed(s, {0}));
    const UnitaryMatrix v = haar_sample(3, derive_seed(s, {1}));
    plain.push_back(phi_unitary(u).value);
    shifted.push_back(phi_unitary(multiply(v, a0)).value);
  }
  // Two-sample KS critical value at 1% for n = m = 1e4 is about 0.023.
  CHECK(oracle::ks_two_sample(plain, shifted) < 0.023);
}

TEST_CASE("U(2) mean of phi^2 matches the Weyl integral") {
  // E[phi^2] = 2 - 2 E[min Re alpha]. Compute the right side by a direct
  // tensor-product midpoint rule over the eigen-angle square with density
  // 4 sin^2(pi (x - y)) / 2.
  const int m = 400;
  double weyl = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double x = -0.5 + (i + 0.5) / m, y = -0.5 + (j + 0.5) / m;
      const double dens = 2.0 * std::pow(std::sin(std::numbers::pi * (x - y)), 2);
      const double min_re = std::min(std::cos(2 * std::numbers::pi * x), std::cos(2 * std::numbers::pi * y));
      weyl += (2.0 - 2.0 * min_re) * dens;
    }
  weyl /= static_cast<double>(m) * m;

  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int s = 0; s < n; ++s) {
    const double p = phi_unitary(haar_sample(2, derive_seed(31, {static_cast<std::uint64_t>(s)}))).value;
    sum += p * p;
    sq += p * p * p * p;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / n);
  CHECK(std::abs(mean - weyl) < 4.0 * se);
}

TEST_CASE("phi_distribution_mc") {
  SUBCASE("endpoints") {
    CHECK(phi_distribution_mc(2, 0.0, 1000, 1).estimate == 0.0);
    CHECK(phi_distribution_mc(2, 2.5, 1000, 1).estimate == 1.0);
  }
  SUBCASE("U(1) at t = 1 covers 1/3") {
    const DistributionEstimate e = phi_distribution_mc(1, 1.0, 100000, 42);
    CHECK(e.ci_low <= 1.0 / 3.0);
    CHECK(1.0 / 3.0 <= e.ci_high);
  }
  SUBCASE("worker count does not change the result") {
    const DistributionEstimate a = phi_distribution_mc(2, 1.2, 4000, 9, 1);
    const DistributionEstimate b = phi_distribution_mc(2, 1.2, 4000, 9, 3);
    CHECK(a.hits == b.hits);
  }
  SUBCASE("multi-threshold run agrees with single runs") {
    const std::vector<double> ts{0.5, 1.0, 1.5};
    const auto curve = phi_distribution_mc(2, ts, 2000, 5);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      CHECK(curve[i].hits == phi_distribution_mc(2, ts[i], 2000, 5).hits);
    }
    CHECK(curve[0].hits <= curve[1].hits);
    CHECK(curve[1].hits <= curve[2].hits);
  }
  SUBCASE("too few samples") { CHECK_THROWS_AS(phi_distribution_mc(1, 1.0, 99, 0), DomainError); }
}

TEST_CASE("wilson_estimate") {
  const DistributionEstimate e = wilson_estimate(1.0, 0, 100);
  CHECK(e.ci_low == 0.0);
  CHECK(e.ci_high > 0.0);
  const DistributionEstimate h = wilson_estimate(1.0, 50, 100);
  // Textbook value for 50/100: (0.4038, 0.5962).
  CHECK(std::abs(h.ci_low - 0.40383) < 1e-4);
  CHECK(std::abs(h.ci_high - 0.59617) < 1e-4);
}

TEST_CASE("phi_lower_bound and w_of_t") {
  CHECK(std::abs(phi_lower_bound(1, 1.0) - 1.0 / std::numbers::pi) < 1e-15);
  CHECK(std::abs(phi_lower_bound(2, 1.0) - std::pow(std::numbers::pi, -4)) < 1e-17);
  CHECK(phi_lower_bound(1, 1.0) <= 1.0 / 3.0);
  CHECK_THROWS_AS(phi_lower_bound(1, 0.0), DomainError);
  CHECK_THROWS_AS(phi_lower_bound(1, 2.1), DomainError);

  CHECK(w_of_t(0.0) == 0.0);
  CHECK(std::abs(w_of_t(2.0) - 0.5) < 1e-15);
  CHECK(std::abs(w_of_t(1.0) - 1.0 / 6.0) < 1e-15);
  CHECK_THROWS_AS(w_of_t(-0.1), DomainError);
  CHECK_THROWS_AS(w_of_t(2.1), DomainError);
}

TEST_CASE("Vandermonde density") {
  CHECK(vandermonde_sq(WeylPoint({0.3})) == 1.0);
  CHECK(std::abs(vandermonde_sq(WeylPoint({0.0, 0.5})) - 4.0) < 1e-14);
  CHECK(std::abs(vandermonde_sq(WeylPoint({0.0, 1.0 / 3, 2.0 / 3})) - 27.0) < 1e-12);

  // Brute-force product of |e(x_n) - e(x_m)|^2 and the determinant route.
  CounterRng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(4);
    for (auto& v : x) v = rng.uniform(-0.5, 0.5);
    double brute = 1.0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) brute *= std::norm(oracle::e(x[a]) - oracle::e(x[b]));
    const WeylPoint p(x);
    CHECK(std::abs(vandermonde_sq(p) - brute) < 1e-10 * std::max(1.0, brute));
    CHECK(std::abs(vandermonde_sq_determinant(p) - brute) < 1e-9 * std::max(1.0, brute));
  }
}

TEST_CASE("weyl_phi_quadrature") {
  SUBCASE("U(1) closed form") {
    CHECK(std::abs(weyl_phi_quadrature(1, 1.0, 64) - 1.0 / 3.0) < 1e-10);
    CHECK(std::abs(weyl_phi_quadrature(1, 2.0, 64) - 1.0) < 1e-10);
    for (double t : {0.1, 0.5, 1.5, 1.9}) {
      CHECK(std::abs(weyl_phi_quadrature(1, t, 64) - oracle::phi_dist_u1(t)) < 1e-10);
    }
  }
  SUBCASE("U(2) closed form") {
    for (double t : {0.2, 0.7, 1.0, 1.6, 2.0}) {
      CHECK(std::abs(weyl_phi_quadrature(2, t, 64) - oracle::phi_dist_u2(t)) < 1e-10);
    }
  }
  SUBCASE("U(2) agrees with Monte Carlo") {
    const double q = weyl_phi_quadrature(2, 1.0, 128);
    const DistributionEstimate e = phi_distribution_mc(2, 1.0, 100000, 2);
    CHECK(e.ci_low <= q);
    CHECK(q <= e.ci_high);
  }
  SUBCASE("U(3) total mass is 1") {
    CHECK(std::abs(weyl_phi_quadrature(3, 2.0, 24) - 1.0) < 1e-10);
  }
  SUBCASE("limits") {
    CHECK_THROWS_AS(weyl_phi_quadrature(4, 1.0, 8), DomainError);
    CHECK_THROWS_AS(weyl_phi_quadrature(3, 1.0, 500), ResourceError);
    CHECK_THROWS_AS(weyl_phi_quadrature(2, 2.5, 16), DomainError);
  }
}

TEST_CASE("lower bound chain") {
  for (Eigen::Index n : {1, 2}) {
    for (int i = 1; i <= 10; ++i) {
      const double t = 0.2 * i;
      const double q = weyl_phi_quadrature(n, t, 96);
      const double w = w_of_t(t);
      CHECK(phi_lower_bound(n, t) <= q + 1e-9);
      CHECK(std::pow(2.0 * w, static_cast<double>(n * n)) <= q + 1e-9);
      CHECK(phi_lower_bound(n, t) <= std::pow(2.0 * w, static_cast<double>(n * n)) + 1e-12);
    }
  }
}

TEST_CASE("parseval_check") {
  const MeanEstimate one = parseval_check(1, 1000, 3);
  CHECK(one.mean == 1.0);
  CHECK(one.std_error == 0.0);
  for (Eigen::Index n : {2, 3}) {
    const MeanEstimate m = parseval_check(n, 100000, 11);
    CHECK(std::abs(m.mean - 1.0) <= 3.0 * m.std_error);
  }
}

TEST_CASE("sine inequality") {
  CHECK(sine_inequality_holds(0.3, 0.1, 0.1));
  const SineInequalitySides eq = sine_inequality_sides(0.3, 0.2, 0.2);
  CHECK(eq.lhs == 0.0);
  CHECK(eq.rhs == 0.0);
  CounterRng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-0.5, 0.5), y = rng.uniform(-0.5, 0.5);
    const SineInequalitySides s = sine_inequality_sides(0.5, x, y);
    CHECK(std::abs(s.lhs - s.rhs) < 1e-12);
  }
  CHECK_THROWS_AS(sine_inequality_holds(0.6, 0.0, 0.1), DomainError);
  CHECK_THROWS_AS(sine_inequality_holds(0.2, 0.7, 0.1), DomainError);
}

TEST_CASE("phi below t via eigen-angles") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const UnitaryMatrix a = haar_sample(3, s);
    const double p = phi_unitary(a).value;
    for (double t : {0.5, 1.0, 1.5, 1.9}) {
      if (std::abs(p - t) < 1e-9) continue;
      CHECK(phi_below_via_angles(a, t) == (p < t));
    }
  }
}
