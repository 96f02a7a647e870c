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

#include "unidioph/torus.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "unidioph/errors.hpp"
#include "unidioph/lexmin.hpp"

namespace unidioph {

namespace {

constexpr double kTorusDegeneracy = 1e-12;
constexpr double kMaxTorusBox = 1e8;

double reduce_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // x = -tiny rounds to 1
  return r;
}

}  // namespace

double dist_nearest_int(double x) {
  if (!std::isfinite(x)) throw DomainError("dist_nearest_int needs a finite argument");
  return std::abs(x - std::nearbyint(x));
}

TorusPoint::TorusPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DimensionError("TorusPoint needs at least one coordinate");
  for (double& c : coords_) {
    if (!std::isfinite(c)) throw NonFiniteEntry("TorusPoint coordinate is not finite");
    c = reduce_unit(c);
  }
}

TorusPoint TorusPoint::operator+(const TorusPoint& other) const {
  if (other.dim() != dim()) throw DimensionError("TorusPoint: dimension mismatch");
  std::vector<double> out(coords_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.coords_[i];
  return TorusPoint(std::move(out));
}

TorusPoint TorusPoint::operator-() const {
  std::vector<double> out(coords_);
  for (double& c : out) c = -c;
  return TorusPoint(std::move(out));
}

double phi_torus(const TorusPoint& g) {
  double m = 0.0;
  for (double c : g.coords()) m = std::max(m, dist_nearest_int(c));
  return m;
}

double torus_Phi(double t, std::size_t dim) {
  if (!(t >= 0.0)) throw DomainError("torus_Phi needs t >= 0");
  if (t > 0.5) return 1.0;
  return std::pow(2.0 * t, static_cast<double>(dim));
}

DistributionEstimate torus_phi_mc(double t, std::size_t dim, std::uint64_t n_samples,
                                  std::uint64_t seed) {
  if (!(t >= 0.0)) throw DomainError("torus_phi_mc needs t >= 0");
  if (dim < 1) throw DimensionError("torus dimension must be positive");
  if (n_samples < 1) throw DomainError("torus_phi_mc needs at least one sample");
  CounterRng rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    double phi = 0.0;
    for (std::size_t l = 0; l < dim; ++l) phi = std::max(phi, dist_nearest_int(rng.uniform()));
    if (phi < t) ++hits;
  }
  return wilson_estimate(t, hits, n_samples);
}

SearchResult torus_delta(std::span<const TorusPoint> alphas, std::span<const long long> ks) {
  const std::size_t m_count = alphas.size();
  if (m_count == 0 || m_count != ks.size()) {
    throw DimensionError("torus_delta needs as many K values as alphas (at least one)");
  }
  const std::size_t dim = alphas.front().dim();
  double box = 1.0;
  double card = 1.0;
  for (std::size_t m = 0; m < m_count; ++m) {
    if (alphas[m].dim() != dim) throw DimensionError("torus_delta: alphas differ in dimension");
    if (ks[m] < 1) throw DomainError("torus_delta needs every K >= 1");
    box *= 2.0 * static_cast<double>(ks[m]) + 1.0;
    card *= static_cast<double>(ks[m]) + 1.0;
  }
  if (box > kMaxTorusBox) throw ResourceError("torus_delta: box exceeds 1e8 words");

  // Odometer over the full box in lexicographic order (j_1 slowest).
  // partial[m] = (j_1 alpha_1 + ... + j_m alpha_m) mod 1, refreshed from the
  // first changed digit, so each entry carries at most M rounding steps.
  std::vector<long long> j(m_count);
  for (std::size_t m = 0; m < m_count; ++m) j[m] = -ks[m];
  std::vector<std::vector<double>> partial(m_count + 1, std::vector<double>(dim, 0.0));
  const auto refresh = [&](std::size_t from) {
    for (std::size_t m = from; m < m_count; ++m) {
      for (std::size_t l = 0; l < dim; ++l) {
        const double term = static_cast<double>(j[m]) * alphas[m].coords()[l];
        partial[m + 1][l] = reduce_unit(partial[m][l] + (term - std::floor(term)));
      }
    }
  };
  refresh(0);

  LexMinTracker tracker(kTieTolerance);
  // Exponent vectors of every candidate the tracker accepted, by order.
  std::map<std::size_t, std::vector<long long>> accepted;
  std::uint64_t evaluations = 0;
  std::size_t order = 0;
  while (true) {
    // Representative of +-j: first nonzero entry positive.
    const auto lead = std::find_if(j.begin(), j.end(), [](long long v) { return v != 0; });
    if (lead != j.end() && *lead > 0) {
      double phi = 0.0;
      for (double c : partial[m_count]) phi = std::max(phi, dist_nearest_int(c));
      const double before = tracker.running_min();
      tracker.observe(order, phi);
      if (phi < before) accepted.emplace(order, j);
      ++evaluations;
      ++order;
    }
    std::size_t digit = m_count;
    while (digit > 0) {
      --digit;
      if (j[digit] < ks[digit]) {
        ++j[digit];
        break;
      }
      j[digit] = -ks[digit];
      if (digit == 0) {
        digit = m_count;  // wrapped: done
        break;
      }
    }
    if (digit == m_count) break;
    refresh(digit);
  }

  const MinLocation loc = tracker.first_within(tracker.running_min());
  SearchResult r;
  r.kind = WordKind::kExponents;
  r.delta = loc.value;
  r.argmin = accepted.at(loc.index);
  r.evaluations = evaluations;
  r.bound = std::pow(card, -1.0 / static_cast<double>(dim));
  if (r.delta <= kTorusDegeneracy) {
    r.delta = 0.0;
    r.degenerate = true;
  }
  r.satisfied = r.delta <= r.bound + kBoundSlack;
  return r;
}

}  // namespace unidioph
