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

#include "unidioph/haar.hpp"
#include "unidioph/search.hpp"

namespace unidioph {

// Distance from x to the nearest integer, in [0, 1/2].
double dist_nearest_int(double x);

// A point of (R/Z)^L with coordinates stored in [0, 1).
class TorusPoint {
 public:
  explicit TorusPoint(std::vector<double> coords);

  const std::vector<double>& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }

  TorusPoint operator+(const TorusPoint& other) const;
  TorusPoint operator-() const;

 private:
  std::vector<double> coords_;
};

// Translation displacement: max_l ||g_l||. The sup over x is attained everywhere.
double phi_torus(const TorusPoint& g);

// Phi(t) = (2t)^L for t <= 1/2 and 1 beyond.
double torus_Phi(double t, std::size_t dim);

// Monte Carlo fraction of uniform g in (R/Z)^L with phi_torus(g) < t.
DistributionEstimate torus_phi_mc(double t, std::size_t dim, std::uint64_t n_samples,
                                  std::uint64_t seed);

/// min phi(j_1 alpha_1 + ... + j_M alpha_M) over nonzero integer vectors with
/// |j_m| <= K_m. bound is prod (K_m + 1)^{-1/L}, i.e. satisfied means
/// delta^L <= prod (K_m + 1)^{-1}.
///
/// Only vectors whose first nonzero entry is positive are evaluated, in
/// lexicographic order; argmin holds that j. If some j hits 0 within 1e-12
/// the result is degenerate with delta 0. ResourceError when
/// prod (2 K_m + 1) > 1e8.
SearchResult torus_delta(std::span<const TorusPoint> alphas, std::span<const long long> ks);

}  // namespace unidioph
