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
#include <string>
#include <vector>

#include "unidioph/linalg.hpp"

namespace unidioph {

// Two elements closer than this in rho count as equal.
constexpr double kDistinctnessThreshold = 1e-8;
// Values within this of the minimum tie; the first in enumeration order wins.
constexpr double kTieTolerance = 1e-12;
// Slack for comparing a minimum against its theorem bound.
constexpr double kBoundSlack = 1e-9;
// Largest box the exponent searches will enumerate.
constexpr double kMaxWords = 1e7;

enum class WordKind {
  kIndexPair,  // (a, b) indices into a set, a < b
  kExponents,  // (n), (j, k) or (j, k, l)
};

struct SearchResult {
  double delta = 0.0;
  WordKind kind = WordKind::kExponents;
  std::vector<long long> argmin;
  std::uint64_t evaluations = 0;
  double bound = 0.0;
  bool satisfied = true;
  // Some nontrivial word is the identity (a coincidence in the set, or a
  // relation a^j b^k = e), so the minimum is 0.
  bool degenerate = false;
  // The bound is a conjecture, not a theorem.
  bool conjectural = false;
};

/// delta(A) = min phi(a b*) over unordered pairs of distinct elements,
/// checked against 2 pi |A|^{-1/N^2}. Evaluates each of the |A|(|A|-1)/2
/// pairs once, since phi(g^{-1}) = phi(g).
SearchResult delta_set(std::span<const UnitaryMatrix> elements);

// min phi(a^n), 1 <= n <= n_max, against 2 pi (n_max + 1)^{-1/N^2}.
SearchResult delta_powers(const UnitaryMatrix& a, long long n_max);

/// min phi(A^j B^k) over |j| <= J, |k| <= K, (j, k) != 0, against
/// 2 pi (J + 1)^{-1/N^2} (K + 1)^{-1/N^2}.
///
/// phi(A^{-j} B^{-k}) = phi(A^j B^k), so only the half box j >= 1, or j = 0
/// and k >= 1, is enumerated, in lexicographic order; evaluations counts
/// those K + J (2K + 1) words. Requires J, K >= 1 and J K <= 1e7.
SearchResult delta_jk(const UnitaryMatrix& a, const UnitaryMatrix& b, long long j_max,
                      long long k_max, unsigned workers = 1);

// Three-letter analogue over the half box of (j, k, l). No bound is known;
// the product form 2 pi prod (. + 1)^{-1/N^2} is reported with conjectural set.
SearchResult delta_jkl(const UnitaryMatrix& a, const UnitaryMatrix& b, const UnitaryMatrix& c,
                       long long j_max, long long k_max, long long l_max, unsigned workers = 1);

double theorem1_bound(Eigen::Index n, std::uint64_t cardinality);
double theorem2_bound(Eigen::Index n, long long j_max, long long k_max);

struct Violation {
  std::uint64_t trial = 0;
  double delta = 0.0;
  double bound = 0.0;
};

struct VerificationReport {
  int theorem = 0;
  Eigen::Index n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t cardinality = 0;  // finite-set runs
  long long j_max = 0;            // two-letter runs
  long long k_max = 0;
  double bound = 0.0;
  double max_ratio = 0.0;  // max delta / bound over trials
  std::uint64_t degenerate_trials = 0;
  std::vector<Violation> violations;
};

// Trial i draws its matrices from derive_seed(seed, {i, slot}).
VerificationReport verify_theorem1(Eigen::Index n, std::uint64_t cardinality,
                                   std::uint64_t trials, std::uint64_t seed,
                                   unsigned workers = 1);
VerificationReport verify_theorem2(Eigen::Index n, long long j_max, long long k_max,
                                   std::uint64_t trials, std::uint64_t seed,
                                   unsigned workers = 1);

}  // namespace unidioph
