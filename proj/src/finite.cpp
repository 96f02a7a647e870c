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

#include "unidioph/finite.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "unidioph/errors.hpp"
#include "unidioph/rng.hpp"

namespace unidioph {

namespace {

constexpr int kExhaustiveAssociativityOrder = 64;
constexpr std::uint64_t kAssociativitySamples = 100'000;
constexpr double kMaxExhaustiveSubsets = 1e5;

// Mixed int/rational equality recurses forever in C++20 with older Boost, so
// every comparison goes through a Rational operand.
const Rational kZero{0};

void require_element(const FiniteGroup& g, int a) {
  if (a < 0 || a >= g.order()) {
    throw DomainError("group element index " + std::to_string(a) + " out of range");
  }
}

double binomial(int n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    c = c * static_cast<double>(n - static_cast<int>(i)) / static_cast<double>(i + 1);
  }
  return c;
}

}  // namespace

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

// ---------------------------------------------------------------- group

FiniteGroup FiniteGroup::from_table(Table mul) {
  const int n = static_cast<int>(mul.size());
  if (n == 0) throw InvalidStructure("group table is empty");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n) throw InvalidStructure("group table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) throw InvalidStructure("group table entry out of range");
    }
  }
  FiniteGroup g;
  g.mul_ = std::move(mul);

  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = g.mul_[e][x] == x && g.mul_[x][e] == x;
    if (ok) identity = e;
  }
  if (identity < 0) throw InvalidStructure("group table has no identity element");
  g.identity_ = identity;

  g.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.mul_[a][b] == identity && g.mul_[b][a] == identity) {
        g.inv_[a] = b;
        break;
      }
    }
    if (g.inv_[a] < 0) throw InvalidStructure("element " + std::to_string(a) + " has no inverse");
  }

  const auto assoc_fails = [&](int a, int b, int c) {
    return g.mul_[g.mul_[a][b]][c] != g.mul_[a][g.mul_[b][c]];
  };
  if (n <= kExhaustiveAssociativityOrder) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (assoc_fails(a, b, c)) throw InvalidStructure("group table is not associative");
  } else {
    CounterRng rng(derive_seed(0x61737363ULL, {static_cast<std::uint64_t>(n)}));
    for (std::uint64_t s = 0; s < kAssociativitySamples; ++s) {
      const int a = static_cast<int>(rng.below(n));
      const int b = static_cast<int>(rng.below(n));
      const int c = static_cast<int>(rng.below(n));
      if (assoc_fails(a, b, c)) throw InvalidStructure("group table is not associative");
    }
  }
  return g;
}

int FiniteGroup::power(int a, long long k) const {
  int base = k >= 0 ? a : inv_[a];
  unsigned long long e = static_cast<unsigned long long>(k >= 0 ? k : -k);
  int result = identity_;
  while (e > 0) {
    if (e & 1ULL) result = mul_[result][base];
    base = mul_[base][base];
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------- metric

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<Rational>> dist)
    : dist_(std::move(dist)) {
  const int n = static_cast<int>(dist_.size());
  if (n == 0) throw InvalidStructure("metric space is empty");
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(dist_[x].size()) != n) throw InvalidStructure("distance table is not square");
    for (int y = 0; y < n; ++y) {
      const Rational& d = dist_[x][y];
      if (d < kZero) throw InvalidStructure("negative distance");
      if ((x == y) != (d == kZero)) throw InvalidStructure("d(x, y) = 0 must hold exactly when x = y");
      if (d != dist_[y][x]) throw InvalidStructure("distance table is not symmetric");
    }
  }
  nonarchimedean_ = true;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const Rational& d = dist_[x][y];
        if (d > dist_[x][z] + dist_[z][y]) throw InvalidStructure("triangle inequality fails");
        if (d > std::max(dist_[x][z], dist_[z][y])) nonarchimedean_ = false;
      }
}

FiniteMetricSpace circular_metric(int size) {
  if (size < 1) throw DomainError("metric size must be positive");
  std::vector<std::vector<Rational>> d(size, std::vector<Rational>(size));
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y) {
      const int diff = std::abs(x - y);
      d[x][y] = std::min(diff, size - diff);
    }
  return FiniteMetricSpace(std::move(d));
}

FiniteMetricSpace discrete_metric(int size) {
  if (size < 1) throw DomainError("metric size must be positive");
  std::vector<std::vector<Rational>> d(size, std::vector<Rational>(size));
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y) d[x][y] = x == y ? 0 : 1;
  return FiniteMetricSpace(std::move(d));
}

// ---------------------------------------------------------------- action

FiniteAction::FiniteAction(FiniteGroup group, FiniteMetricSpace space, Table act,
                           std::string name)
    : group_(std::move(group)), space_(std::move(space)), act_(std::move(act)),
      name_(std::move(name)) {
  const int order = group_.order();
  const int size = space_.size();
  if (static_cast<int>(act_.size()) != order) {
    throw InvalidStructure("action table needs one row per group element");
  }
  for (const auto& row : act_) {
    if (static_cast<int>(row.size()) != size) {
      throw InvalidStructure("action table needs one column per point");
    }
    for (int v : row) {
      if (v < 0 || v >= size) throw InvalidStructure("action table entry out of range");
    }
  }
  for (int x = 0; x < size; ++x) {
    if (act_[group_.identity()][x] != x) throw InvalidStructure("identity does not act trivially");
  }
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h)
      for (int x = 0; x < size; ++x)
        if (act_[group_.mul(g, h)][x] != act_[g][act_[h][x]]) {
          throw InvalidStructure("action is not compatible with the multiplication table");
        }

  std::vector<int> kernel;
  for (int g = 0; g < order; ++g) {
    if (g != group_.identity() && act_[g] == act_[group_.identity()]) kernel.push_back(g);
  }
  if (!kernel.empty()) {
    std::string msg = "action is not faithful; nonidentity kernel elements:";
    for (int g : kernel) msg += " " + std::to_string(g);
    throw InvalidStructure(msg);
  }

  isometric_ = true;
  phi_.assign(order, Rational(0));
  for (int g = 0; g < order; ++g) {
    for (int x = 0; x < size; ++x) {
      phi_[g] = std::max(phi_[g], space_.dist(act_[g][x], x));
      for (int y = 0; y < size && isometric_; ++y) {
        if (space_.dist(act_[g][x], act_[g][y]) != space_.dist(x, y)) isometric_ = false;
      }
    }
  }
  sorted_phi_ = phi_;
  std::sort(sorted_phi_.begin(), sorted_phi_.end());
}

Rational phi_exact(const FiniteAction& action, int g) {
  require_element(action.group(), g);
  return action.phi(g);
}

Rational Phi_exact(const FiniteAction& action, const Rational& t) {
  if (t < kZero) throw DomainError("Phi_exact needs t >= 0");
  const auto& s = action.sorted_phi_;
  const auto below = std::lower_bound(s.begin(), s.end(), t) - s.begin();
  return Rational(static_cast<std::int64_t>(below), static_cast<std::int64_t>(s.size()));
}

Rational delta_exact(const FiniteAction& action, std::span<const int> subset) {
  if (subset.size() < 2) throw CardinalityError("delta_exact needs at least two elements");
  const FiniteGroup& g = action.group();
  for (int a : subset) require_element(g, a);
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i + 1; j < subset.size(); ++j)
      if (subset[i] == subset[j]) throw CardinalityError("delta_exact needs distinct elements");
  Rational best = action.phi(g.mul(subset[0], g.inv(subset[1])));
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i + 1; j < subset.size(); ++j)
      best = std::min(best, action.phi(g.mul(subset[i], g.inv(subset[j]))));
  return best;
}

Theorem3Report verify_theorem3_exact(const FiniteAction& action, std::span<const int> subset) {
  Theorem3Report r;
  r.subset_size = subset.size();
  r.delta = delta_exact(action, subset);
  r.bound = Rational(1, static_cast<std::int64_t>(subset.size()));
  r.phi_half = Phi_exact(action, r.delta / 2);
  r.holds = r.phi_half <= r.bound;
  r.equality = r.phi_half == r.bound;
  r.nonarchimedean = action.space().nonarchimedean();
  if (r.nonarchimedean) {
    r.phi_delta = Phi_exact(action, r.delta);
    r.nonarch_holds = r.phi_delta <= r.bound;
    r.nonarch_equality = r.phi_delta == r.bound;
  }
  return r;
}

Theorem4Report verify_theorem4_exact(const FiniteAction& action, int a, int b, long long m_max,
                                     long long n_max) {
  if (!action.isometric()) throw NotIsometric("the two-letter bound needs an action by isometries");
  const FiniteGroup& g = action.group();
  require_element(g, a);
  require_element(g, b);
  if (m_max < 1 || n_max < 1) throw DomainError("the two-letter bound needs M, N >= 1");
  if (static_cast<double>(2 * m_max + 1) * static_cast<double>(2 * n_max + 1) > 1e8) {
    throw ResourceError("two-letter box exceeds 1e8 words");
  }

  Theorem4Report r;
  r.a = a;
  r.b = b;
  r.m_max = m_max;
  r.n_max = n_max;
  // Conjugation by a^m maps a^-m b^-n to the inverse of a^m b^n, so on an
  // isometric action the half box m > 0 or (m = 0, n > 0) already attains
  // the minimum. The argmin is the first minimizer in that order.
  bool first = true;
  const auto visit = [&](long long m, long long n) {
    const int word = g.mul(g.power(a, m), g.power(b, n));
    if (word == g.identity()) r.degenerate = true;
    const Rational& phi = action.phi(word);
    if (first || phi < r.delta) {
      r.delta = phi;
      r.argmin = {m, n};
      first = false;
    }
  };
  for (long long n = 1; n <= n_max; ++n) visit(0, n);
  for (long long m = 1; m <= m_max; ++m)
    for (long long n = -n_max; n <= n_max; ++n) visit(m, n);
  r.bound = Rational(1, static_cast<std::int64_t>((m_max + 1) * (n_max + 1)));
  r.phi_half = Phi_exact(action, r.delta / 2);
  r.holds = r.phi_half <= r.bound;
  r.equality = r.phi_half == r.bound;
  r.nonarchimedean = action.space().nonarchimedean();
  if (r.nonarchimedean) {
    r.phi_delta = Phi_exact(action, r.delta);
    r.nonarch_holds = r.phi_delta <= r.bound;
    r.nonarch_equality = r.phi_delta == r.bound;
  }

  std::vector<int> set;
  for (long long k = 0; k <= m_max; ++k)
    for (long long l = 0; l <= n_max; ++l) set.push_back(g.mul(g.power(a, k), g.power(b, l)));
  std::vector<int> distinct = set;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  r.full_cardinality = distinct.size() == set.size();
  if (r.full_cardinality) r.collapse_matches = delta_exact(action, set) == r.delta;
  return r;
}

// ---------------------------------------------------------------- catalog

FiniteAction action_from_permutations(const Table& perms, FiniteMetricSpace space,
                                      std::string name) {
  const int order = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < order; ++i) {
    if (!index.emplace(perms[i], i).second) {
      throw InvalidStructure("permutation list has duplicates");
    }
  }
  Table mul(order, std::vector<int>(order));
  for (int g = 0; g < order; ++g) {
    for (int h = 0; h < order; ++h) {
      std::vector<int> composed(perms[h].size());
      for (std::size_t x = 0; x < composed.size(); ++x) composed[x] = perms[g][perms[h][x]];
      const auto it = index.find(composed);
      if (it == index.end()) throw InvalidStructure("permutations are not closed under composition");
      mul[g][h] = it->second;
    }
  }
  return FiniteAction(FiniteGroup::from_table(std::move(mul)), std::move(space), perms,
                      std::move(name));
}

namespace {

FiniteMetricSpace make_metric(MetricKind kind, int size) {
  return kind == MetricKind::kCircular ? circular_metric(size) : discrete_metric(size);
}

std::string catalog_name(char letter, int n, MetricKind metric) {
  return std::string(1, letter) + std::to_string(n) + "/" + std::string(metric_name(metric));
}

}  // namespace

FiniteAction cyclic_action(int n, MetricKind metric) {
  if (n < 1 || n > 64) throw DomainError("cyclic group order must be in [1, 64]");
  Table perms(n, std::vector<int>(n));
  for (int r = 0; r < n; ++r)
    for (int x = 0; x < n; ++x) perms[r][x] = (x + r) % n;
  return action_from_permutations(perms, make_metric(metric, n), catalog_name('z', n, metric));
}

FiniteAction symmetric_action(int n, MetricKind metric) {
  if (n < 1 || n > 5) throw DomainError("symmetric group degree must be in [1, 5]");
  Table perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return action_from_permutations(perms, make_metric(metric, n), catalog_name('s', n, metric));
}

FiniteAction dihedral_action(int n, MetricKind metric) {
  // D_1 and D_2 do not act faithfully on 1 or 2 points.
  if (n < 3 || n > 32) throw DomainError("dihedral group degree must be in [3, 32]");
  Table perms;
  for (int s = 0; s < 2; ++s)
    for (int r = 0; r < n; ++r) {
      std::vector<int> p(n);
      for (int x = 0; x < n; ++x) p[x] = ((s == 0 ? x : n - x) + r) % n;
      perms.push_back(std::move(p));
    }
  return action_from_permutations(perms, make_metric(metric, n), catalog_name('d', n, metric));
}

namespace {

std::pair<char, int> parse_group(std::string_view group) {
  if (group.size() < 2) throw DomainError("unknown group '" + std::string(group) + "'");
  const char letter = static_cast<char>(std::tolower(static_cast<unsigned char>(group[0])));
  int n = 0;
  const auto [ptr, ec] = std::from_chars(group.data() + 1, group.data() + group.size(), n);
  if (ec != std::errc() || ptr != group.data() + group.size() ||
      (letter != 'z' && letter != 's' && letter != 'd')) {
    throw DomainError("unknown group '" + std::string(group) + "' (expected zN, sN or dN)");
  }
  return {letter, n};
}

}  // namespace

MetricKind natural_metric(std::string_view group) {
  return parse_group(group).first == 's' ? MetricKind::kDiscrete : MetricKind::kCircular;
}

FiniteAction catalog_action(std::string_view group, MetricKind metric) {
  const auto [letter, n] = parse_group(group);
  switch (letter) {
    case 'z':
      return cyclic_action(n, metric);
    case 's':
      return symmetric_action(n, metric);
    default:
      return dihedral_action(n, metric);
  }
}

MetricKind parse_metric(std::string_view name) {
  if (name == "circular") return MetricKind::kCircular;
  if (name == "discrete") return MetricKind::kDiscrete;
  throw DomainError("unknown metric '" + std::string(name) + "' (expected circular or discrete)");
}

std::string_view metric_name(MetricKind kind) {
  return kind == MetricKind::kCircular ? "circular" : "discrete";
}

// ---------------------------------------------------------------- sweeps

SweepReport sweep_theorem3(const FiniteAction& action, std::size_t max_size,
                           std::uint64_t samples, std::uint64_t seed) {
  SweepReport report;
  report.action = action.name();
  report.nonarchimedean = action.space().nonarchimedean();
  const int order = action.group().order();

  const auto check = [&](const std::vector<int>& subset) {
    const Theorem3Report r = verify_theorem3_exact(action, subset);
    ++report.subsets_checked;
    if (r.equality) ++report.equality_cases;
    if (r.nonarch_equality) ++report.nonarch_equality_cases;
    if (!r.holds) report.violations.push_back({subset, false});
    if (!r.nonarch_holds) report.violations.push_back({subset, true});
  };

  for (std::size_t k = 2; k <= max_size && k <= static_cast<std::size_t>(order); ++k) {
    if (binomial(order, k) > kMaxExhaustiveSubsets) {
      report.sampled_sizes.push_back(k);
      std::vector<int> pool(order);
      for (std::uint64_t s = 0; s < samples; ++s) {
        std::iota(pool.begin(), pool.end(), 0);
        CounterRng rng(derive_seed(seed, {k, s}));
        // Partial Fisher-Yates: the first k entries are a uniform k-subset.
        for (std::size_t i = 0; i < k; ++i) {
          const std::size_t j = i + rng.below(order - i);
          std::swap(pool[i], pool[j]);
        }
        std::vector<int> subset(pool.begin(), pool.begin() + static_cast<long>(k));
        std::sort(subset.begin(), subset.end());
        check(subset);
      }
      continue;
    }
    std::vector<int> subset(k);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      check(subset);
      // Next k-combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && subset[i - 1] == order - static_cast<int>(k - i) - 1) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return report;
}

IdentityReport check_phi_identities(const FiniteAction& action) {
  const FiniteGroup& grp = action.group();
  const int order = grp.order();
  const bool nonarch = action.space().nonarchimedean();
  const bool iso = action.isometric();
  IdentityReport r;
  const auto rho = [&](int g, int h) -> const Rational& { return action.phi(grp.mul(g, grp.inv(h))); };

  for (int g = 0; g < order; ++g) {
    ++r.checks;
    if (action.phi(grp.inv(g)) != action.phi(g)) ++r.inverse_symmetry;
    for (int h = 0; h < order; ++h) {
      r.checks += 2;
      const Rational& q = rho(g, h);
      if (q > action.phi(g) + action.phi(h)) ++r.subadditivity;
      if (nonarch && q > std::max(action.phi(g), action.phi(h))) ++r.nonarchimedean;
      if (iso) {
        if (action.phi(grp.mul(g, h)) != action.phi(grp.mul(h, g))) ++r.commutation;
        if (action.phi(grp.mul(grp.mul(g, h), grp.inv(g))) != action.phi(h)) ++r.conjugation;
      }
      if ((q == kZero) != (g == h) || q != rho(h, g)) ++r.metric;
      for (int k = 0; k < order; ++k) {
        if (q > rho(g, k) + rho(k, h)) ++r.metric;
      }
    }
  }
  return r;
}

}  // namespace unidioph
