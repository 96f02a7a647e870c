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

#include "unidioph/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "unidioph/displacement.hpp"
#include "unidioph/errors.hpp"
#include "unidioph/haar.hpp"
#include "unidioph/lexmin.hpp"

namespace unidioph {

namespace {

double dirichlet_factor(Eigen::Index n, double count) {
  return std::pow(count, -1.0 / static_cast<double>(n * n));
}

void finish(SearchResult& r) {
  if (r.delta <= kDistinctnessThreshold) {
    r.delta = 0.0;
    r.degenerate = true;
  }
  r.satisfied = r.delta <= r.bound + kBoundSlack;
}

// pows[i] = a^i for 0 <= i <= count, each product re-certified.
std::vector<ComplexMatrix> power_table(const UnitaryMatrix& a, long long count) {
  std::vector<ComplexMatrix> pows;
  pows.reserve(static_cast<std::size_t>(count) + 1);
  UnitaryMatrix p = UnitaryMatrix::identity(a.dim());
  pows.push_back(p.matrix());
  for (long long i = 1; i <= count; ++i) {
    p = multiply(p, a);
    pows.push_back(p.matrix());
  }
  return pows;
}

// table[k + count] = b^k for -count <= k <= count.
std::vector<ComplexMatrix> signed_power_table(const UnitaryMatrix& b, long long count) {
  const std::vector<ComplexMatrix> pos = power_table(b, count);
  std::vector<ComplexMatrix> table;
  table.reserve(2 * pos.size() - 1);
  for (long long k = count; k >= 1; --k) table.push_back(pos[k].adjoint());
  for (const auto& m : pos) table.push_back(m);
  return table;
}

void require_same_dim(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matrices have different dimensions");
}

}  // namespace

double theorem1_bound(Eigen::Index n, std::uint64_t cardinality) {
  return 2.0 * std::numbers::pi * dirichlet_factor(n, static_cast<double>(cardinality));
}

double theorem2_bound(Eigen::Index n, long long j_max, long long k_max) {
  return 2.0 * std::numbers::pi * dirichlet_factor(n, static_cast<double>(j_max + 1)) *
         dirichlet_factor(n, static_cast<double>(k_max + 1));
}

SearchResult delta_set(std::span<const UnitaryMatrix> elements) {
  if (elements.size() < 2) throw CardinalityError("delta_set needs at least two elements");
  const Eigen::Index n = elements.front().dim();
  for (const auto& e : elements) {
    if (e.dim() != n) throw DimensionError("delta_set: elements have different dimensions");
  }
  const std::size_t size = elements.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(size * (size - 1) / 2);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a + 1; b < size; ++b) pairs.emplace_back(a, b);
  }
  const MinLocation loc = enumerate_min(pairs.size(), 1, kTieTolerance, [&](std::size_t i) {
    const auto [a, b] = pairs[i];
    return rho(elements[a], elements[b]);
  });
  SearchResult r;
  r.kind = WordKind::kIndexPair;
  r.delta = loc.value;
  r.argmin = {static_cast<long long>(pairs[loc.index].first),
              static_cast<long long>(pairs[loc.index].second)};
  r.evaluations = pairs.size();
  r.bound = theorem1_bound(n, size);
  finish(r);
  return r;
}

SearchResult delta_powers(const UnitaryMatrix& a, long long n_max) {
  if (n_max < 1) throw DomainError("delta_powers needs n_max >= 1");
  if (static_cast<double>(n_max) > kMaxWords) throw ResourceError("delta_powers: n_max > 1e7");
  LexMinTracker tracker(kTieTolerance);
  UnitaryMatrix p = a;
  for (long long m = 1; m <= n_max; ++m) {
    if (m > 1) p = multiply(p, a);
    tracker.observe(static_cast<std::size_t>(m), phi_value(p.matrix()));
  }
  const MinLocation loc = tracker.first_within(tracker.running_min());
  SearchResult r;
  r.delta = loc.value;
  r.argmin = {static_cast<long long>(loc.index)};
  r.evaluations = static_cast<std::uint64_t>(n_max);
  r.bound = theorem1_bound(a.dim(), static_cast<std::uint64_t>(n_max) + 1);
  finish(r);
  return r;
}

SearchResult delta_jk(const UnitaryMatrix& a, const UnitaryMatrix& b, long long j_max,
                      long long k_max, unsigned workers) {
  require_same_dim(a, b);
  if (j_max < 1 || k_max < 1) throw DomainError("delta_jk needs J >= 1 and K >= 1");
  if (static_cast<double>(j_max) * static_cast<double>(k_max) > kMaxWords) {
    throw ResourceError("delta_jk: J * K exceeds 1e7");
  }
  const auto pa = power_table(a, j_max);
  const auto pb = signed_power_table(b, k_max);
  const long long width = 2 * k_max + 1;
  const auto word = [&](std::size_t i) -> std::pair<long long, long long> {
    const auto idx = static_cast<long long>(i);
    if (idx < k_max) return {0, idx + 1};
    const long long rest = idx - k_max;
    return {1 + rest / width, -k_max + rest % width};
  };
  const std::size_t count = static_cast<std::size_t>(k_max + j_max * width);
  const MinLocation loc = enumerate_min(count, workers, kTieTolerance, [&](std::size_t i) {
    const auto [j, k] = word(i);
    return phi_value(pa[j] * pb[k + k_max]);
  });
  SearchResult r;
  r.delta = loc.value;
  const auto [j, k] = word(loc.index);
  r.argmin = {j, k};
  r.evaluations = count;
  r.bound = theorem2_bound(a.dim(), j_max, k_max);
  finish(r);
  return r;
}

SearchResult delta_jkl(const UnitaryMatrix& a, const UnitaryMatrix& b, const UnitaryMatrix& c,
                       long long j_max, long long k_max, long long l_max, unsigned workers) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  if (j_max < 1 || k_max < 1 || l_max < 1) {
    throw DomainError("delta_jkl needs J, K, L >= 1");
  }
  if (static_cast<double>(j_max) * static_cast<double>(k_max) * static_cast<double>(l_max) >
      kMaxWords) {
    throw ResourceError("delta_jkl: J * K * L exceeds 1e7");
  }
  const auto pa = power_table(a, j_max);
  const auto pb = signed_power_table(b, k_max);
  const auto pc = signed_power_table(c, l_max);
  const long long wl = 2 * l_max + 1;
  const long long wkl = (2 * k_max + 1) * wl;
  struct Word {
    long long j, k, l;
  };
  // Half box in lexicographic order: (0, 0, l > 0), (0, k > 0, *), (j > 0, *, *).
  const auto word = [&](std::size_t i) -> Word {
    auto idx = static_cast<long long>(i);
    if (idx < l_max) return {0, 0, idx + 1};
    idx -= l_max;
    if (idx < k_max * wl) return {0, 1 + idx / wl, -l_max + idx % wl};
    idx -= k_max * wl;
    const long long rem = idx % wkl;
    return {1 + idx / wkl, -k_max + rem / wl, -l_max + rem % wl};
  };
  const std::size_t count = static_cast<std::size_t>(l_max + k_max * wl + j_max * wkl);
  const MinLocation loc = enumerate_min(count, workers, kTieTolerance, [&](std::size_t i) {
    const Word w = word(i);
    return phi_value(pa[w.j] * pb[w.k + k_max] * pc[w.l + l_max]);
  });
  SearchResult r;
  r.delta = loc.value;
  const Word w = word(loc.index);
  r.argmin = {w.j, w.k, w.l};
  r.evaluations = count;
  r.bound = 2.0 * std::numbers::pi * dirichlet_factor(a.dim(), static_cast<double>(j_max + 1)) *
            dirichlet_factor(a.dim(), static_cast<double>(k_max + 1)) *
            dirichlet_factor(a.dim(), static_cast<double>(l_max + 1));
  r.conjectural = true;
  finish(r);
  return r;
}

namespace {

template <class RunTrial>
VerificationReport run_trials(VerificationReport report, unsigned workers, RunTrial&& run_trial) {
  std::vector<SearchResult> results(report.trials);
  parallel_slices(report.trials, workers, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) results[i] = run_trial(i);
  });
  for (std::size_t i = 0; i < results.size(); ++i) {
    const SearchResult& r = results[i];
    report.bound = r.bound;
    report.max_ratio = std::max(report.max_ratio, r.delta / r.bound);
    if (r.degenerate) ++report.degenerate_trials;
    if (!r.satisfied) report.violations.push_back({i, r.delta, r.bound});
  }
  return report;
}

}  // namespace

VerificationReport verify_theorem1(Eigen::Index n, std::uint64_t cardinality,
                                   std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  if (cardinality < 2) throw CardinalityError("verify_theorem1 needs cardinality >= 2");
  VerificationReport report;
  report.theorem = 1;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.cardinality = cardinality;
  report.bound = theorem1_bound(n, cardinality);
  return run_trials(std::move(report), workers, [&](std::uint64_t trial) {
    std::vector<UnitaryMatrix> set;
    set.reserve(cardinality);
    for (std::uint64_t i = 0; i < cardinality; ++i) {
      set.push_back(haar_sample(n, derive_seed(seed, {trial, i})));
    }
    return delta_set(set);
  });
}

VerificationReport verify_theorem2(Eigen::Index n, long long j_max, long long k_max,
                                   std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  VerificationReport report;
  report.theorem = 2;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.j_max = j_max;
  report.k_max = k_max;
  report.bound = theorem2_bound(n, j_max, k_max);
  return run_trials(std::move(report), workers, [&](std::uint64_t trial) {
    const UnitaryMatrix a = haar_sample(n, derive_seed(seed, {trial, 0}));
    const UnitaryMatrix b = haar_sample(n, derive_seed(seed, {trial, 1}));
    return delta_jk(a, b, j_max, k_max);
  });
}

}  // namespace unidioph
