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
#include <span>
#include <vector>

#include "unidioph/linalg.hpp"
#include "unidioph/rng.hpp"

namespace unidioph {

/// Haar-random element of U(N): QR of a complex Ginibre matrix with each
/// column of Q rotated by the phase of the matching diagonal entry of R.
/// Without that phase correction the result is not Haar distributed.
UnitaryMatrix haar_sample(Eigen::Index n, CounterRng& rng);
UnitaryMatrix haar_sample(Eigen::Index n, std::uint64_t seed);

/// Monte Carlo estimate of Phi(t) = mu{A : phi(A) < t} with a 95% Wilson
/// interval.
struct DistributionEstimate {
  double t = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t hits = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// 95% Wilson score interval for hits / n.
DistributionEstimate wilson_estimate(double t, std::uint64_t hits, std::uint64_t n);

// Sample i uses the stream derive_seed(seed, {i}), so the estimate does not
// depend on the worker count. Requires t >= 0 and n_samples >= 100.
DistributionEstimate phi_distribution_mc(Eigen::Index n, double t, std::uint64_t n_samples,
                                         std::uint64_t seed, unsigned workers = 1);

// One pass over the same samples for several thresholds.
std::vector<DistributionEstimate> phi_distribution_mc(Eigen::Index n, std::span<const double> ts,
                                                      std::uint64_t n_samples, std::uint64_t seed,
                                                      unsigned workers = 1);

// (t / pi)^{N^2}, a lower bound for Phi(t) on U(N). Requires 0 < t <= 2.
double phi_lower_bound(Eigen::Index n, double t);

// The w in (0, 1/2] with t = 2 sin(pi w). Requires 0 <= t <= 2.
double w_of_t(double t);

// A point of the torus (R/Z)^N represented in the cube (-1/2, 1/2]^N.
class WeylPoint {
 public:
  // Coordinates are reduced modulo 1 into (-1/2, 1/2].
  explicit WeylPoint(std::vector<double> x);

  const std::vector<double>& coords() const { return x_; }
  std::size_t dim() const { return x_.size(); }

 private:
  std::vector<double> x_;
};

// |E(x)|^2 = prod_{m<n} |e(x_n) - e(x_m)|^2, the eigen-angle density of
// U(N) up to the factor 1/N!.
double vandermonde_sq(const WeylPoint& x);
double vandermonde_sq(std::span<const double> x);

// |det(e((n-1) x_m))|^2, the same quantity through the determinant.
double vandermonde_sq_determinant(const WeylPoint& x);

// Phi(t) = (1/N!) \int_{|y_n| < w} |E(y)|^2 dy by tensor-product
// Gauss-Legendre with grid_points nodes per axis. N <= 3, 0 < t <= 2;
// ResourceError when grid_points^N > 1e8.
double weyl_phi_quadrature(Eigen::Index n, double t, int grid_points);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
};

// Monte Carlo mean of |E(x)|^2 / N! over uniform torus points; converges to 1.
MeanEstimate parseval_check(Eigen::Index n, std::uint64_t n_samples, std::uint64_t seed);

struct SineInequalitySides {
  double lhs;  // (2w)^2 |e(x) - e(y)|^2
  double rhs;  // |e(2wx) - e(2wy)|^2
};

// Both sides of (2w)^2 |e(x) - e(y)|^2 <= |e(2wx) - e(2wy)|^2 for
// |w|, |x|, |y| <= 1/2 (DomainError outside the cube).
SineInequalitySides sine_inequality_sides(double w, double x, double y);

// The inequality above with additive slack 1e-12.
bool sine_inequality_holds(double w, double x, double y);

// phi(A) < t decided from the eigen-angles: every |x_n| < w_of_t(t).
bool phi_below_via_angles(const UnitaryMatrix& a, double t);

}  // namespace unidioph
