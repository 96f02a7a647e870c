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
#include <limits>
#include <vector>

#include "unidioph/errors.hpp"
#include "unidioph/rng.hpp"
#include "unidioph/torus.hpp"

using namespace unidioph;

namespace {

// min over (j_1..j_M) != 0 in the box of max_l ||sum_m j_m alpha_m,l||, by
// direct nested enumeration of the full box.
double brute_torus_delta(const std::vector<std::vector<double>>& alphas, const std::vector<long long>& ks) {
  const std::size_t m = alphas.size(), l = alphas[0].size();
  std::vector<long long> j(m);
  for (std::size_t i = 0; i < m; ++i) j[i] = -ks[i];
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    bool zero = true;
    for (long long v : j) zero = zero && v == 0;
    if (!zero) {
      double phi = 0.0;
      for (std::size_t c = 0; c < l; ++c) {
        double x = 0.0;
        for (std::size_t i = 0; i < m; ++i) x += static_cast<double>(j[i]) * alphas[i][c];
        phi = std::max(phi, std::abs(x - std::round(x)));
      }
      best = std::min(best, phi);
    }
    std::size_t i = m;
    while (i > 0 && j[i - 1] == ks[i - 1]) j[i - 1] = -ks[i - 1], --i;
    if (i == 0) break;
    ++j[i - 1];
  }
  return best;
}

std::vector<TorusPoint> points(const std::vector<std::vector<double>>& a) {
  std::vector<TorusPoint> out;
  for (const auto& p : a) out.emplace_back(p);
  return out;
}

}  // namespace

TEST_CASE("dist_nearest_int") {
  CHECK(dist_nearest_int(0.6) == doctest::Approx(0.4));
  CHECK(dist_nearest_int(-0.25) == 0.25);
  CHECK(dist_nearest_int(3.5) == 0.5);
  CHECK(dist_nearest_int(0.0) == 0.0);
}

TEST_CASE("phi_torus") {
  CHECK(phi_torus(TorusPoint({0.0, 0.0})) == 0.0);
  CHECK(phi_torus(TorusPoint({0.5, 0.1})) == 0.5);
  CHECK(phi_torus(TorusPoint({0.6, 0.75})) == doctest::Approx(0.4));
  const TorusPoint g({0.3, 0.9});
  CHECK(phi_torus(-g) == doctest::Approx(phi_torus(g)));
  CHECK(phi_torus(g + -g) < 1e-15);
}

TEST_CASE("torus_Phi closed form") {
  CHECK(torus_Phi(0.25, 1) == 0.5);
  CHECK(torus_Phi(0.5, 3) == 1.0);
  CHECK(torus_Phi(0.1, 2) == doctest::Approx(0.04));
  CHECK(torus_Phi(0.0, 2) == 0.0);
}

TEST_CASE("empirical Phi matches (2t)^L") {
  for (std::size_t l = 1; l <= 3; ++l) {
    for (double t : {0.1, 0.25, 0.4}) {
      const DistributionEstimate e = torus_phi_mc(t, l, 100000, 10 * l + static_cast<std::uint64_t>(t * 100));
      const double p = torus_Phi(t, l);
      const double sigma = std::sqrt(p * (1 - p) / 100000);
      CHECK(std::abs(e.estimate - p) <= 3.0 * sigma);
    }
  }
}

TEST_CASE("torus_delta") {
  SUBCASE("rational alpha is degenerate") {
    const auto a = points({{0.5}});
    const long long k[] = {2};
    const SearchResult r = torus_delta(a, k);
    CHECK(r.delta == 0.0);
    CHECK(r.degenerate);
    CHECK(r.argmin == std::vector<long long>{2});
  }
  SUBCASE("golden ratio, K = 10") {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    const auto a = points({{g}});
    const long long k[] = {10};
    const SearchResult r = torus_delta(a, k);
    CHECK(std::abs(r.delta - dist_nearest_int(8 * g)) < 1e-14);
    CHECK(std::abs(r.delta - 0.05572809000084122) < 1e-12);
    CHECK(r.argmin == std::vector<long long>{8});
    CHECK(std::abs(r.bound - 1.0 / 11.0) < 1e-15);
    CHECK(r.satisfied);
  }
  SUBCASE("L = 2, alpha = (sqrt 2 - 1, sqrt 3 - 1), K = 20") {
    const auto a = points({{std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0}});
    const long long k[] = {20};
    const SearchResult r = torus_delta(a, k);
    CHECK(r.satisfied);
    CHECK(r.delta * r.delta <= 1.0 / 21.0);
    CHECK(std::abs(r.delta - brute_torus_delta({{std::sqrt(2.0) - 1.0, std::sqrt(3.0) - 1.0}}, {20})) < 1e-12);
  }
  SUBCASE("random instances satisfy the bound and match brute force") {
    CounterRng rng(41);
    for (std::size_t l = 1; l <= 3; ++l)
      for (std::size_t m = 1; m <= 3; ++m)
        for (long long kk : {1LL, 4LL}) {
          for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::vector<double>> raw(m, std::vector<double>(l));
            for (auto& p : raw)
              for (auto& c : p) c = rng.uniform();
            const std::vector<long long> ks(m, kk);
            const SearchResult r = torus_delta(points(raw), ks);
            CHECK(std::pow(r.delta, static_cast<double>(l)) * std::pow(kk + 1.0, static_cast<double>(m)) <=
                  1.0 + 1e-9);
            CHECK(std::abs(r.delta - brute_torus_delta(raw, ks)) < 1e-12);
          }
        }
  }
  SUBCASE("M = 1 agrees with a pairwise search over the orbit") {
    CounterRng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<double> alpha{rng.uniform(), rng.uniform()};
      const long long k = 12;
      double pairwise = std::numeric_limits<double>::infinity();
      for (long long a = 0; a <= k; ++a)
        for (long long b = a + 1; b <= k; ++b) {
          const TorusPoint pa({a * alpha[0], a * alpha[1]}), pb({b * alpha[0], b * alpha[1]});
          pairwise = std::min(pairwise, phi_torus(pa + -pb));
        }
      const long long ks[] = {k};
      const SearchResult r = torus_delta(points({alpha}), ks);
      CHECK(std::abs(r.delta - pairwise) < 1e-12);
    }
  }
  SUBCASE("oversize box") {
    const auto a = points({{0.1}, {0.2}, {0.3}});
    const long long ks[] = {1000, 1000, 1000};
    CHECK_THROWS_AS(torus_delta(a, ks), ResourceError);
  }
}
