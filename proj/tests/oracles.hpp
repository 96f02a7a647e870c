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

// Reference computations that share no code path with the library: closed
// forms, brute-force enumeration and classical statistics.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "unidioph/linalg.hpp"

namespace oracle {

using unidioph::Complex;
using unidioph::ComplexMatrix;

inline Complex e(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

// Eigenvalues of a 3x3 Hermitian matrix from its characteristic polynomial,
// solved with the trigonometric form of Cardano's formula. Ascending.
inline std::array<double, 3> hermitian3_eigenvalues(const ComplexMatrix& m) {
  const double a = m(0, 0).real(), b = m(1, 1).real(), c = m(2, 2).real();
  const Complex d = m(0, 1), e_ = m(1, 2), f = m(0, 2);
  // det(lambda I - M) = lambda^3 - p2 lambda^2 + p1 lambda - p0.
  const double p2 = a + b + c;
  const double p1 = a * b + b * c + a * c - std::norm(d) - std::norm(e_) - std::norm(f);
  const double p0 = a * b * c + 2.0 * (d * e_ * std::conj(f)).real() - a * std::norm(e_) -
                    b * std::norm(f) - c * std::norm(d);
  const double shift = p2 / 3.0;
  const double p = p1 - p2 * p2 / 3.0;  // depressed cubic y^3 + p y + q
  const double q = -2.0 * p2 * p2 * p2 / 27.0 + p2 * p1 / 3.0 - p0;
  std::array<double, 3> out{shift, shift, shift};
  if (p < 0.0) {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      out[k] = shift + r * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// phi from the eigenvalues of a general complex eigensolver:
// sqrt(2 - 2 min Re(alpha)).
inline double phi_from_eigenvalues(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a);
  double min_re = 1.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) min_re = std::min(min_re, es.eigenvalues()(i).real());
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * min_re));
}

// Kolmogorov-Smirnov distance of a sample from Uniform[0, 1).
inline double ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max({d, (i + 1) / n - xs[i], xs[i] - i / n});
  }
  return d;
}

// Two-sample Kolmogorov-Smirnov distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

// Phi(t) on U(1): the arc {x : |e(x) - 1| < t} has length 2 asin(t/2) / pi.
inline double phi_dist_u1(double t) { return 2.0 * std::asin(std::min(t, 2.0) / 2.0) / std::numbers::pi; }

// Phi(t) on U(2). Both eigen-angles lie in (-w, w) with w = asin(t/2)/pi;
// integrating the density 4 sin^2(pi (x - y)) / 2! = 1 - cos(2 pi (x - y))
// over that square gives (2w)^2 - (sin(2 pi w) / pi)^2.
inline double phi_dist_u2(double t) {
  const double w = std::asin(std::min(t, 2.0) / 2.0) / std::numbers::pi;
  const double s = std::sin(2.0 * std::numbers::pi * w);
  return 4.0 * w * w - s * s / (std::numbers::pi * std::numbers::pi);
}

// |e(x) - e(y)| on U(1).
inline double chord(double x, double y) { return std::abs(e(x) - e(y)); }

}  // namespace oracle
