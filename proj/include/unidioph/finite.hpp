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

#include <boost/rational.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace unidioph {

using Rational = boost::rational<std::int64_t>;
using Table = std::vector<std::vector<int>>;

/// A finite group given by its multiplication table. Elements are indices
/// 0..n-1; identity and inverses are derived and the axioms checked
/// (associativity exhaustively up to order 64, on 1e5 seeded random
/// triples above that).
class FiniteGroup {
 public:
  static FiniteGroup from_table(Table mul);

  int order() const { return static_cast<int>(mul_.size()); }
  int mul(int a, int b) const { return mul_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int identity() const { return identity_; }
  // a^k for any integer k.
  int power(int a, long long k) const;
  const Table& table() const { return mul_; }

 private:
  FiniteGroup() = default;
  Table mul_;
  std::vector<int> inv_;
  int identity_ = 0;
};

// A finite metric space with rational distances; metric axioms are verified
// on construction.
class FiniteMetricSpace {
 public:
  explicit FiniteMetricSpace(std::vector<std::vector<Rational>> dist);

  int size() const { return static_cast<int>(dist_.size()); }
  const Rational& dist(int x, int y) const { return dist_[x][y]; }
  // Strong triangle inequality d(x, y) <= max(d(x, z), d(z, y)) on all triples.
  bool nonarchimedean() const { return nonarchimedean_; }
  const std::vector<std::vector<Rational>>& table() const { return dist_; }

 private:
  std::vector<std::vector<Rational>> dist_;
  bool nonarchimedean_ = false;
};

/// A faithful action of a finite group on a finite metric space. Action
/// axioms and faithfulness are verified; an unfaithful table is rejected
/// with the kernel elements named. phi(g) = max_x d(gx, x) is tabulated.
class FiniteAction {
 public:
  FiniteAction(FiniteGroup group, FiniteMetricSpace space, Table act, std::string name = {});

  const FiniteGroup& group() const { return group_; }
  const FiniteMetricSpace& space() const { return space_; }
  int act(int g, int x) const { return act_[g][x]; }
  const Table& table() const { return act_; }
  // Every element preserves the metric.
  bool isometric() const { return isometric_; }
  const Rational& phi(int g) const { return phi_[g]; }
  const std::string& name() const { return name_; }

 private:
  FiniteGroup group_;
  FiniteMetricSpace space_;
  Table act_;
  std::string name_;
  bool isometric_ = false;
  std::vector<Rational> phi_;
  std::vector<Rational> sorted_phi_;

  friend Rational Phi_exact(const FiniteAction&, const Rational&);
};

Rational phi_exact(const FiniteAction& action, int g);

// |{g : phi(g) < t}| / |G|.
Rational Phi_exact(const FiniteAction& action, const Rational& t);

// min phi(a b^{-1}) over distinct pairs; CardinalityError below two elements.
Rational delta_exact(const FiniteAction& action, std::span<const int> subset);

struct Theorem3Report {
  std::size_t subset_size = 0;
  Rational delta;
  Rational bound;          // 1 / |A|
  Rational phi_half;       // Phi(delta / 2)
  bool holds = true;
  bool equality = false;
  bool nonarchimedean = false;
  Rational phi_delta;      // Phi(delta); checked only on nonarchimedean spaces
  bool nonarch_holds = true;
  bool nonarch_equality = false;
};

// Phi(delta/2) <= 1/|A| and, on nonarchimedean spaces, Phi(delta) <= 1/|A|.
Theorem3Report verify_theorem3_exact(const FiniteAction& action, std::span<const int> subset);

struct Theorem4Report {
  int a = 0;
  int b = 0;
  long long m_max = 0;
  long long n_max = 0;
  Rational delta;                  // delta_{M,N}(a, b)
  std::vector<long long> argmin;   // (m, n), lexicographically first
  bool degenerate = false;         // some a^m b^n = e in the box
  Rational bound;                  // 1 / ((M + 1)(N + 1))
  Rational phi_half;
  bool holds = true;
  bool equality = false;
  bool nonarchimedean = false;
  Rational phi_delta;
  bool nonarch_holds = true;
  bool nonarch_equality = false;
  // When {a^k b^l : 0 <= k <= M, 0 <= l <= N} has (M+1)(N+1) elements, its
  // delta equals delta_{M,N}(a, b).
  bool full_cardinality = false;
  bool collapse_matches = true;
};

// NotIsometric unless the action is by isometries.
Theorem4Report verify_theorem4_exact(const FiniteAction& action, int a, int b, long long m_max,
                                     long long n_max);

enum class MetricKind { kCircular, kDiscrete };

// Build an action from a list of permutations of {0..size-1} closed under
// composition; element i acts as perms[i] and (g h)(x) = g(h(x)).
FiniteAction action_from_permutations(const Table& perms, FiniteMetricSpace space,
                                      std::string name = {});

FiniteMetricSpace circular_metric(int size);
FiniteMetricSpace discrete_metric(int size);

// Z_n on Z_n by translation.
FiniteAction cyclic_action(int n, MetricKind metric);
// S_n on {0..n-1}; permutations in lexicographic order, identity first.
FiniteAction symmetric_action(int n, MetricKind metric);
// D_n (order 2n) on the n-cycle: x -> r + x and x -> r - x.
FiniteAction dihedral_action(int n, MetricKind metric);

// "z12", "s4", "d6" with an explicit metric.
FiniteAction catalog_action(std::string_view group, MetricKind metric);
MetricKind natural_metric(std::string_view group);
MetricKind parse_metric(std::string_view name);
std::string_view metric_name(MetricKind kind);

struct SweepViolation {
  std::vector<int> subset;
  bool nonarchimedean_branch = false;
};

struct SweepReport {
  std::string action;
  bool nonarchimedean = false;
  std::uint64_t subsets_checked = 0;
  std::uint64_t equality_cases = 0;
  std::uint64_t nonarch_equality_cases = 0;
  std::vector<std::size_t> sampled_sizes;  // sizes where subsets were sampled
  std::vector<SweepViolation> violations;
};

/// The finite-set bound over every subset of size 2..max_size; a size whose subset count
/// exceeds 1e5 is covered by `samples` uniform random subsets instead.
SweepReport sweep_theorem3(const FiniteAction& action, std::size_t max_size,
                           std::uint64_t samples, std::uint64_t seed);

struct IdentityReport {
  std::uint64_t checks = 0;
  std::uint64_t inverse_symmetry = 0;  // phi(g^-1) != phi(g)
  std::uint64_t subadditivity = 0;     // phi(g h^-1) > phi(g) + phi(h)
  std::uint64_t nonarchimedean = 0;    // phi(g h^-1) > max(...) on nonarch spaces
  std::uint64_t commutation = 0;       // phi(gh) != phi(hg) on isometric actions
  std::uint64_t conjugation = 0;       // phi(g h g^-1) != phi(h) on isometric actions
  std::uint64_t metric = 0;            // rho fails a metric axiom
  std::uint64_t total_violations() const {
    return inverse_symmetry + subadditivity + nonarchimedean + commutation + conjugation + metric;
  }
};

// Exhaustive exact check of the phi identities and the metric rho(g, h) = phi(g h^-1).
IdentityReport check_phi_identities(const FiniteAction& action);

std::string to_string(const Rational& r);

}  // namespace unidioph
