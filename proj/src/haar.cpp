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

#include "unidioph/haar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "unidioph/displacement.hpp"
#include "unidioph/errors.hpp"
#include "unidioph/parallel.hpp"
#include "unidioph/quadrature.hpp"

namespace unidioph {

namespace {

constexpr double kWilsonZ = 1.959963984540054;  // 97.5% normal quantile

double factorial(Eigen::Index n) {
  double f = 1.0;
  for (Eigen::Index k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

void require_dimension(Eigen::Index n) {
  if (n < 1 || n > kMaxDimension) {
    throw DimensionError("dimension must be in [1, 64], got " + std::to_string(n));
  }
}

}  // namespace

UnitaryMatrix haar_sample(Eigen::Index n, CounterRng& rng) {
  require_dimension(n);
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
  }
  if (n == 1) {
    // QR of a 1x1 matrix with phase correction is z / |z|.
    g(0, 0) /= std::abs(g(0, 0));
    return check_unitary(g, 1e-12);
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex r = qr.matrixQR()(j, j);
    const double mod = std::abs(r);
    if (mod > 0.0) q.col(j) *= r / mod;
  }
  UnitaryMatrix u = check_unitary(q);
  if (u.residual() > 1e-12 * static_cast<double>(n)) u = reunitarize(q);
  return u;
}

UnitaryMatrix haar_sample(Eigen::Index n, std::uint64_t seed) {
  CounterRng rng(seed);
  return haar_sample(n, rng);
}

DistributionEstimate wilson_estimate(double t, std::uint64_t hits, std::uint64_t n) {
  DistributionEstimate est;
  est.t = t;
  est.n_samples = n;
  est.hits = hits;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = kWilsonZ / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  est.estimate = p;
  est.ci_low = std::clamp(std::min(center - half, p), 0.0, 1.0);
  est.ci_high = std::clamp(std::max(center + half, p), 0.0, 1.0);
  if (hits == 0) est.ci_low = 0.0;
  if (hits == n) est.ci_high = 1.0;
  return est;
}

std::vector<DistributionEstimate> phi_distribution_mc(Eigen::Index n, std::span<const double> ts,
                                                      std::uint64_t n_samples, std::uint64_t seed,
                                                      unsigned workers) {
  require_dimension(n);
  if (n_samples < 100) throw DomainError("phi_distribution_mc needs at least 100 samples");
  for (double t : ts) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("threshold t must be finite and >= 0");
  }
  const std::size_t k = ts.size();
  std::vector<std::vector<std::uint64_t>> partial(std::max(1u, workers),
                                                  std::vector<std::uint64_t>(k, 0));
  parallel_slices(n_samples, workers, [&](std::size_t begin, std::size_t end, std::size_t slice) {
    auto& hits = partial[slice];
    for (std::size_t i = begin; i < end; ++i) {
      const double phi = phi_value(haar_sample(n, derive_seed(seed, {i})).matrix());
      for (std::size_t j = 0; j < k; ++j) {
        if (phi < ts[j]) ++hits[j];  // strict: Phi counts the open set phi < t
      }
    }
  });
  std::vector<DistributionEstimate> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::uint64_t total = 0;
    for (const auto& hits : partial) total += hits[j];
    out.push_back(wilson_estimate(ts[j], total, n_samples));
  }
  return out;
}

DistributionEstimate phi_distribution_mc(Eigen::Index n, double t, std::uint64_t n_samples,
                                         std::uint64_t seed, unsigned workers) {
  const double ts[] = {t};
  return phi_distribution_mc(n, ts, n_samples, seed, workers).front();
}

double phi_lower_bound(Eigen::Index n, double t) {
  require_dimension(n);
  if (!(t > 0.0 && t <= 2.0)) throw DomainError("phi_lower_bound needs 0 < t <= 2");
  return std::pow(t / std::numbers::pi, static_cast<double>(n * n));
}

double w_of_t(double t) {
  if (!(t >= 0.0 && t <= 2.0)) throw DomainError("w_of_t needs 0 <= t <= 2");
  return std::asin(t / 2.0) / std::numbers::pi;
}

WeylPoint::WeylPoint(std::vector<double> x) : x_(std::move(x)) {
  if (x_.empty()) throw DimensionError("WeylPoint needs at least one coordinate");
  for (double& c : x_) {
    if (!std::isfinite(c)) throw NonFiniteEntry("WeylPoint coordinate is not finite");
    c = reduce_half_open(c);
  }
}

double vandermonde_sq(std::span<const double> x) {
  double prod = 1.0;
  for (std::size_t m = 0; m < x.size(); ++m) {
    for (std::size_t n = m + 1; n < x.size(); ++n) {
      // |e(a) - e(b)|^2 = 4 sin^2(pi (a - b))
      const double s = std::sin(std::numbers::pi * (x[n] - x[m]));
      prod *= 4.0 * s * s;
    }
  }
  return prod;
}

double vandermonde_sq(const WeylPoint& x) { return vandermonde_sq(std::span(x.coords())); }

double vandermonde_sq_determinant(const WeylPoint& x) {
  const auto n = static_cast<Eigen::Index>(x.dim());
  ComplexMatrix v(n, n);
  for (Eigen::Index row = 0; row < n; ++row) {
    for (Eigen::Index m = 0; m < n; ++m) {
      v(row, m) = unit_phase(static_cast<double>(row) * x.coords()[static_cast<std::size_t>(m)]);
    }
  }
  return std::norm(v.determinant());
}

double weyl_phi_quadrature(Eigen::Index n, double t, int grid_points) {
  if (n < 1 || n > 3) throw DomainError("weyl_phi_quadrature supports 1 <= N <= 3");
  if (!(t > 0.0 && t <= 2.0)) throw DomainError("weyl_phi_quadrature needs 0 < t <= 2");
  if (grid_points < 1) throw DomainError("grid_points must be positive");
  if (std::pow(static_cast<double>(grid_points), static_cast<double>(n)) > 1e8) {
    throw ResourceError("quadrature grid exceeds 1e8 points");
  }
  const double w = w_of_t(t);
  const GaussLegendreRule rule = gauss_legendre(grid_points);
  std::vector<double> nodes(rule.nodes.size());
  std::vector<double> weights(rule.weights.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    nodes[i] = w * rule.nodes[i];
    weights[i] = w * rule.weights[i];
  }
  const std::size_t g = nodes.size();
  const std::size_t dims = static_cast<std::size_t>(n);
  std::size_t total = 1;
  for (std::size_t d = 0; d < dims; ++d) total *= g;

  std::vector<std::size_t> idx(dims, 0);
  std::vector<double> y(dims);
  double sum = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    double weight = 1.0;
    for (std::size_t d = 0; d < dims; ++d) {
      y[d] = nodes[idx[d]];
      weight *= weights[idx[d]];
    }
    sum += weight * vandermonde_sq(std::span<const double>(y));
    for (std::size_t d = 0; d < dims; ++d) {
      if (++idx[d] < g) break;
      idx[d] = 0;
    }
  }
  return sum / factorial(n);
}

MeanEstimate parseval_check(Eigen::Index n, std::uint64_t n_samples, std::uint64_t seed) {
  if (n < 1 || n > 6) throw DomainError("parseval_check supports 1 <= N <= 6");
  if (n_samples < 1) throw DomainError("parseval_check needs at least one sample");
  CounterRng rng(seed);
  const double norm = factorial(n);
  std::vector<double> x(static_cast<std::size_t>(n));
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    for (double& c : x) c = rng.uniform(-0.5, 0.5);
    const double v = vandermonde_sq(std::span<const double>(x)) / norm;
    const double delta = v - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (v - mean);
  }
  MeanEstimate out;
  out.mean = mean;
  out.n_samples = n_samples;
  const double nn = static_cast<double>(n_samples);
  out.std_error = n_samples > 1 ? std::sqrt(m2 / (nn - 1.0) / nn) : 0.0;
  return out;
}

SineInequalitySides sine_inequality_sides(double w, double x, double y) {
  if (!(std::abs(w) <= 0.5 && std::abs(x) <= 0.5 && std::abs(y) <= 0.5)) {
    throw DomainError("sine inequality needs |w|, |x|, |y| <= 1/2");
  }
  const double two_w = 2.0 * w;
  return {two_w * two_w * std::norm(unit_phase(x) - unit_phase(y)),
          std::norm(unit_phase(two_w * x) - unit_phase(two_w * y))};
}

bool sine_inequality_holds(double w, double x, double y) {
  const SineInequalitySides s = sine_inequality_sides(w, x, y);
  return s.lhs <= s.rhs + 1e-12;
}

bool phi_below_via_angles(const UnitaryMatrix& a, double t) {
  if (t > 2.0) return true;
  if (t <= 0.0) return false;
  const double w = w_of_t(t);
  const EigenvalueSet angles = unitary_eigen_angles(a);
  return std::all_of(angles.angles().begin(), angles.angles().end(),
                     [w](double x) { return std::abs(x) < w; });
}

}  // namespace unidioph
