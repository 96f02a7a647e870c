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

#include "unidioph/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "unidioph/displacement.hpp"
#include "unidioph/errors.hpp"
#include "unidioph/finite.hpp"
#include "unidioph/haar.hpp"
#include "unidioph/io.hpp"
#include "unidioph/search.hpp"
#include "unidioph/torus.hpp"

#ifndef UNIDIOPH_VERSION
#define UNIDIOPH_VERSION "dev"
#endif

namespace unidioph::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  std::string text;
  json result;
  int exit_code = kSuccess;
};

struct GlobalOptions {
  unsigned workers = 1;
  std::string format = "json";
  std::string manifest;
};

Outcome json_outcome(json result, int exit_code = kSuccess) {
  Outcome o;
  o.text = result.dump(2) + "\n";
  o.result = std::move(result);
  o.exit_code = exit_code;
  return o;
}

void require_json_format(const GlobalOptions& g) {
  if (g.format != "json") throw UsageError("--format csv is only available for curve commands");
}

json complex_vector_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

json search_json(const SearchResult& r) {
  json j = {
      {"delta", r.delta},
      {"argmin",
       {{"kind", r.kind == WordKind::kIndexPair ? "index_pair" : "exponents"},
        {"value", r.argmin}}},
      {"evaluations", r.evaluations},
      {"bound", r.bound},
      {"satisfied", r.satisfied},
      {"degenerate", r.degenerate},
  };
  if (r.conjectural) {
    j["conjectural"] = true;
    j["bound_status"] = "conjectural: no proven bound for three letters";
  }
  return j;
}

json estimate_json(const DistributionEstimate& e) {
  return {{"t", e.t},          {"n_samples", e.n_samples}, {"hits", e.hits},
          {"estimate", e.estimate}, {"ci_low", e.ci_low},  {"ci_high", e.ci_high}};
}

std::string rational_text(const Rational& r) { return to_string(r); }

UnitaryMatrix load_unitary(const std::string& path) { return check_unitary(read_matrix_file(path)); }

double curve_lower_bound(Eigen::Index n, double t) { return t > 0.0 ? phi_lower_bound(n, t) : 0.0; }

std::string csv_row(std::initializer_list<double> values) {
  std::string line;
  bool first = true;
  for (double v : values) {
    if (!first) line += ',';
    line += format_double(v);
    first = false;
  }
  return line + "\n";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--subset: '" + item + "' is not an element index");
    }
  }
  return out;
}

Rational parse_rational_flag(const std::string& text) {
  try {
    return rational_from_json(json(text));
  } catch (const Error&) {
    throw UsageError("--t: '" + text + "' is not a rational number");
  }
}

using Handler = std::function<Outcome()>;

// ------------------------------------------------------------ subcommands

struct FiniteSource {
  std::string group;
  std::string metric;
  std::string action_file;

  void add_to(CLI::App* sub) {
    sub->add_option("--group", group, "catalog group: zN, sN or dN");
    sub->add_option("--metric", metric, "circular or discrete (default: natural metric)");
    sub->add_option("--action", action_file, "JSON file with mul/act/dist tables");
  }

  FiniteAction load() const {
    if (group.empty() == action_file.empty()) {
      throw UsageError("give exactly one of --group and --action");
    }
    if (!action_file.empty()) return action_from_json(read_json_file(action_file), action_file);
    const MetricKind kind = metric.empty() ? natural_metric(group) : parse_metric(metric);
    return catalog_action(group, kind);
  }
};

json theorem3_json(const Theorem3Report& r) {
  json j = {{"subset_size", r.subset_size},
            {"delta", rational_text(r.delta)},
            {"bound", rational_text(r.bound)},
            {"Phi_half_delta", rational_text(r.phi_half)},
            {"holds", r.holds},
            {"equality", r.equality},
            {"nonarchimedean", r.nonarchimedean}};
  if (r.nonarchimedean) {
    j["Phi_delta"] = rational_text(r.phi_delta);
    j["nonarch_holds"] = r.nonarch_holds;
    j["nonarch_equality"] = r.nonarch_equality;
  }
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Displacement, Haar distribution and Dirichlet-type bounds on compact groups"};
  app.name("unidioph");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  if (const char* env = std::getenv("UNIDIOPH_WORKERS")) {
    try {
      global.workers = static_cast<unsigned>(std::max(1, std::stoi(env)));
    } catch (const std::exception&) {
      err << "warning: ignoring UNIDIOPH_WORKERS='" << env << "'\n";
    }
  }
  app.add_option("--workers", global.workers, "worker threads (default $UNIDIOPH_WORKERS or 1)")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--format", global.format, "json or csv (curve commands)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--manifest", global.manifest, "also write an experiment manifest to this file");

  std::map<const CLI::App*, Handler> handlers;

  // haar ------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("haar", "Draw a Haar-random unitary matrix");
    auto n = std::make_shared<long long>(2);
    auto seed = std::make_shared<std::uint64_t>(0);
    sub->add_option("--n", *n, "dimension N")->required()->check(CLI::Range(1, 64));
    sub->add_option("--seed", *seed, "random seed");
    handlers[sub] = [=, &global] {
      require_json_format(global);
      const UnitaryMatrix a = haar_sample(*n, *seed);
      Outcome o;
      o.text = matrix_to_json_text(a.matrix()) + "\n";
      o.result = json::parse(o.text);
      return o;
    };
  }

  // phi -------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("phi", "Displacement phi(A) of a unitary matrix");
    struct P {
      std::string matrix;
      bool empirical = false;
      std::uint64_t samples = 10000;
      std::uint64_t seed = 0;
    };
    auto p = std::make_shared<P>();
    sub->add_option("--matrix", p->matrix, "matrix JSON file")->required();
    sub->add_flag("--empirical", p->empirical, "also estimate the sup by sampling unit vectors");
    sub->add_option("--samples", p->samples, "unit vectors for --empirical")->check(CLI::PositiveNumber);
    sub->add_option("--seed", p->seed, "random seed for --empirical");
    handlers[sub] = [=, &global] {
      require_json_format(global);
      const UnitaryMatrix a = load_unitary(p->matrix);
      const DisplacementValue v = phi_unitary(a);
      json j = {{"n", a.dim()}, {"phi", v.value}, {"witness", complex_vector_json(*v.witness)}};
      if (p->empirical) {
        j["empirical"] = phi_empirical(a, p->samples, p->seed);
        j["samples"] = p->samples;
        j["seed"] = p->seed;
      }
      return json_outcome(std::move(j));
    };
  }

  // phi-dist --------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("phi-dist", "Estimate Phi(t) = mu{A : phi(A) < t} on U(N)");
    struct P {
      long long n = 1;
      double t = 1.0;
      std::uint64_t samples = 100000;
      std::uint64_t seed = 0;
      std::string method = "mc";
      int grid = 64;
    };
    auto p = std::make_shared<P>();
    sub->add_option("--n", p->n, "dimension N")->required()->check(CLI::Range(1, 64));
    sub->add_option("--t", p->t, "threshold t")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--samples", p->samples, "Monte Carlo samples (>= 100)")->check(CLI::Range(100ULL, ~0ULL));
    sub->add_option("--seed", p->seed, "random seed");
    sub->add_option("--method", p->method, "mc or quadrature")->check(CLI::IsMember({"mc", "quadrature"}));
    sub->add_option("--grid", p->grid, "Gauss-Legendre nodes per axis")->check(CLI::PositiveNumber);
    handlers[sub] = [=, &global] {
      require_json_format(global);
      if (p->method == "quadrature") {
        if (p->n > 3) throw UsageError("--method quadrature supports --n <= 3");
        if (!(p->t > 0.0 && p->t <= 2.0)) throw UsageError("--method quadrature needs 0 < t <= 2");
        const double value = weyl_phi_quadrature(p->n, p->t, p->grid);
        const double lb = phi_lower_bound(p->n, p->t);
        return json_outcome({{"t", p->t},
                             {"method", "quadrature"},
                             {"grid", p->grid},
                             {"estimate", value},
                             {"lower_bound", lb},
                             {"gap", value - lb}});
      }
      const DistributionEstimate e = phi_distribution_mc(p->n, p->t, p->samples, p->seed, global.workers);
      json j = estimate_json(e);
      j["method"] = "mc";
      j["seed"] = p->seed;
      if (p->t > 0.0 && p->t <= 2.0) {
        const double lb = phi_lower_bound(p->n, p->t);
        j["lower_bound"] = lb;
        j["gap"] = e.estimate - lb;
      }
      return json_outcome(std::move(j));
    };
  }

  // phi-curve -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("phi-curve", "Phi(t) on a grid of thresholds (--format csv for a table)");
    struct P {
      long long n = 1;
      double t_min = 0.0;
      double t_max = 2.0;
      int steps = 10;
      std::uint64_t samples = 100000;
      std::uint64_t seed = 0;
      std::string method = "mc";
      int grid = 64;
    };
    auto p = std::make_shared<P>();
    sub->add_option("--n", p->n, "dimension N")->required()->check(CLI::Range(1, 64));
    sub->add_option("--t-min", p->t_min, "first threshold")->check(CLI::Range(0.0, 2.0));
    sub->add_option("--t-max", p->t_max, "last threshold")->check(CLI::Range(0.0, 2.0));
    sub->add_option("--steps", p->steps, "number of intervals")->check(CLI::PositiveNumber);
    sub->add_option("--samples", p->samples, "Monte Carlo samples")->check(CLI::Range(100ULL, ~0ULL));
    sub->add_option("--seed", p->seed, "random seed");
    sub->add_option("--method", p->method, "mc or quadrature")->check(CLI::IsMember({"mc", "quadrature"}));
    sub->add_option("--grid", p->grid, "Gauss-Legendre nodes per axis")->check(CLI::PositiveNumber);
    handlers[sub] = [=, &global] {
      if (p->t_min > p->t_max) throw UsageError("--t-min must not exceed --t-max");
      if (p->method == "quadrature" && p->n > 3) throw UsageError("--method quadrature supports --n <= 3");
      std::vector<double> ts;
      for (int i = 0; i <= p->steps; ++i) ts.push_back(p->t_min + (p->t_max - p->t_min) * i / p->steps);
      std::vector<DistributionEstimate> rows;
      if (p->method == "mc") {
        rows = phi_distribution_mc(p->n, ts, p->samples, p->seed, global.workers);
      } else {
        for (double t : ts) {
          DistributionEstimate e;
          e.t = t;
          e.estimate = t > 0.0 ? weyl_phi_quadrature(p->n, t, p->grid) : 0.0;
          e.ci_low = e.ci_high = e.estimate;
          rows.push_back(e);
        }
      }
      Outcome o;
      json arr = json::array();
      std::string csv = "t,estimate,ci_low,ci_high,lower_bound\n";
      for (const auto& e : rows) {
        const double lb = curve_lower_bound(p->n, e.t);
        csv += csv_row({e.t, e.estimate, e.ci_low, e.ci_high, lb});
        arr.push_back({{"t", e.t}, {"estimate", e.estimate}, {"ci_low", e.ci_low},
                       {"ci_high", e.ci_high}, {"lower_bound", lb}});
      }
      o.result = arr;
      o.text = global.format == "json" ? arr.dump(2) + "\n" : csv;
      return o;
    };
  }

  // delta-set -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("delta-set", "delta(A) for a finite set of unitary matrices");
    auto path = std::make_shared<std::string>();
    sub->add_option("--matrices", *path, "JSON list of matrices, or a directory of matrix files")
        ->required();
    handlers[sub] = [=, &global] {
      require_json_format(global);
      std::vector<UnitaryMatrix> set;
      for (const auto& m : read_matrix_collection(*path)) set.push_back(check_unitary(m));
      if (set.size() < 2) throw UsageError("--matrices must contain at least two matrices");
      return json_outcome(search_json(delta_set(set)));
    };
  }

  // delta-powers ----------------------------------------------------------
  {
    auto* sub = app.add_subcommand("delta-powers", "min phi(a^n) over 1 <= n <= N");
    auto a = std::make_shared<std::string>();
    auto n_max = std::make_shared<long long>(1);
    sub->add_option("--a", *a, "matrix JSON file")->required();
    sub->add_option("--n-max", *n_max, "largest exponent")->required()->check(CLI::Range(1LL, 10'000'000LL));
    handlers[sub] = [=, &global] {
      require_json_format(global);
      return json_outcome(search_json(delta_powers(load_unitary(*a), *n_max)));
    };
  }

  // delta-jk --------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("delta-jk", "min phi(A^j B^k) over the box |j| <= J, |k| <= K");
    struct P {
      std::string a, b;
      long long j = 1, k = 1;
    };
    auto p = std::make_shared<P>();
    sub->add_option("--a", p->a, "matrix A")->required();
    sub->add_option("--b", p->b, "matrix B")->required();
    sub->add_option("--J", p->j, "exponent range for A (>= 1)")->required()->check(CLI::PositiveNumber);
    sub->add_option("--K", p->k, "exponent range for B (>= 1)")->required()->check(CLI::PositiveNumber);
    handlers[sub] = [=, &global] {
      require_json_format(global);
      return json_outcome(
          search_json(delta_jk(load_unitary(p->a), load_unitary(p->b), p->j, p->k, global.workers)));
    };
  }

  // delta-jkl -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("delta-jkl", "min phi(A^j B^k C^l); exploratory, no proven bound");
    struct P {
      std::string a, b, c;
      long long j = 1, k = 1, l = 1;
    };
    auto p = std::make_shared<P>();
    sub->add_option("--a", p->a, "matrix A")->required();
    sub->add_option("--b", p->b, "matrix B")->required();
    sub->add_option("--c", p->c, "matrix C")->required();
    sub->add_option("--J", p->j, "exponent range for A (>= 1)")->required()->check(CLI::PositiveNumber);
    sub->add_option("--K", p->k, "exponent range for B (>= 1)")->required()->check(CLI::PositiveNumber);
    sub->add_option("--L", p->l, "exponent range for C (>= 1)")->required()->check(CLI::PositiveNumber);
    handlers[sub] = [=, &global] {
      require_json_format(global);
      return json_outcome(search_json(delta_jkl(load_unitary(p->a), load_unitary(p->b),
                                                load_unitary(p->c), p->j, p->k, p->l,
                                                global.workers)));
    };
  }

  // verify ----------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("verify", "Check the U(N) Dirichlet bounds on random instances");
    struct P {
      int theorem = 1;
      long long n = 1;
      std::uint64_t trials = 100;
      std::uint64_t seed = 0;
      std::uint64_t cardinality = 16;
      long long j = 6, k = 6;
    };
    auto p = std::make_shared<P>();
    sub->add_option("--theorem", p->theorem, "1 (finite sets) or 2 (two-letter words)")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    sub->add_option("--n", p->n, "dimension N")->required()->check(CLI::Range(1, 64));
    sub->add_option("--trials", p->trials, "random instances");
    sub->add_option("--seed", p->seed, "random seed");
    sub->add_option("--cardinality", p->cardinality, "set size for theorem 1")->check(CLI::Range(2ULL, 100000ULL));
    sub->add_option("--J", p->j, "exponent range for theorem 2")->check(CLI::PositiveNumber);
    sub->add_option("--K", p->k, "exponent range for theorem 2")->check(CLI::PositiveNumber);
    handlers[sub] = [=, &global] {
      require_json_format(global);
      const VerificationReport r =
          p->theorem == 1 ? verify_theorem1(p->n, p->cardinality, p->trials, p->seed, global.workers)
                          : verify_theorem2(p->n, p->j, p->k, p->trials, p->seed, global.workers);
      json violations = json::array();
      for (const auto& v : r.violations) {
        violations.push_back({{"trial", v.trial}, {"delta", v.delta}, {"bound", v.bound}});
      }
      json j = {{"theorem", r.theorem},   {"n", r.n},
                {"trials", r.trials},     {"seed", r.seed},
                {"bound", r.bound},       {"max_ratio", r.max_ratio},
                {"degenerate_trials", r.degenerate_trials},
                {"violations", std::move(violations)}};
      if (r.theorem == 1) {
        j["cardinality"] = r.cardinality;
      } else {
        j["J"] = r.j_max;
        j["K"] = r.k_max;
      }
      return json_outcome(std::move(j), r.violations.empty() ? kSuccess : kBoundViolated);
    };
  }

  // torus-delta -----------------------------------------------------------
  {
    auto* sub = app.add_subcommand("torus-delta", "Classical Dirichlet minimum on (R/Z)^L");
    auto alphas = std::make_shared<std::string>();
    auto ks = std::make_shared<std::vector<long long>>();
    sub->add_option("--alphas", *alphas, "JSON list of points alpha_m")->required();
    sub->add_option("--ks", *ks, "comma-separated K_m")->required()->delimiter(',')->check(CLI::PositiveNumber);
    handlers[sub] = [=, &global] {
      require_json_format(global);
      const auto points = alphas_from_json(read_json_file(*alphas));
      if (points.size() != ks->size()) throw UsageError("--ks needs one value per alpha");
      const SearchResult r = torus_delta(points, *ks);
      json j = search_json(r);
      j["dim"] = points.front().dim();
      return json_outcome(std::move(j));
    };
  }

  // torus-phi-curve -------------------------------------------------------
  {
    auto* sub = app.add_subcommand("torus-phi-curve",
                                   "Monte Carlo Phi(t) on (R/Z)^L next to the exact (2t)^L");
    struct P {
      std::size_t l = 1;
      int steps = 10;
      double t_max = 0.5;
      std::uint64_t samples = 100000;
      std::uint64_t seed = 0;
    };
    auto p = std::make_shared<P>();
    sub->add_option("--l", p->l, "torus dimension L")->required()->check(CLI::Range(1, 64));
    sub->add_option("--steps", p->steps, "number of intervals")->required()->check(CLI::PositiveNumber);
    sub->add_option("--t-max", p->t_max, "last threshold")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--samples", p->samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    sub->add_option("--seed", p->seed, "random seed");
    handlers[sub] = [=, &global] {
      json arr = json::array();
      std::string csv = "t,estimate,ci_low,ci_high,lower_bound\n";
      for (int i = 0; i <= p->steps; ++i) {
        const double t = p->t_max * i / p->steps;
        const DistributionEstimate e = torus_phi_mc(t, p->l, p->samples, p->seed);
        const double exact = torus_Phi(t, p->l);
        csv += csv_row({t, e.estimate, e.ci_low, e.ci_high, exact});
        arr.push_back({{"t", t}, {"estimate", e.estimate}, {"ci_low", e.ci_low},
                       {"ci_high", e.ci_high}, {"lower_bound", exact}});
      }
      Outcome o;
      o.result = arr;
      o.text = global.format == "json" ? arr.dump(2) + "\n" : csv;
      return o;
    };
  }

  // finite ----------------------------------------------------------------
  {
    auto* finite = app.add_subcommand("finite", "Exact checks on finite group actions");
    finite->require_subcommand(1);
    finite->fallthrough();

    {
      auto* sub = finite->add_subcommand("verify", "Check the finite-set bound over subsets, in exact rationals");
      struct P {
        FiniteSource source;
        std::size_t subset_size = 4;
        std::uint64_t samples = 1000;
        std::uint64_t seed = 0;
        std::string subset;
      };
      auto p = std::make_shared<P>();
      p->source.add_to(sub);
      sub->add_option("--subset-size", p->subset_size, "largest subset size swept")->check(CLI::Range(2, 64));
      sub->add_option("--samples", p->samples, "random subsets per size when there are more than 1e5")
          ->check(CLI::PositiveNumber);
      sub->add_option("--seed", p->seed, "random seed for sampled sizes");
      sub->add_option("--subset", p->subset, "check one subset, e.g. 0,3,6,9");
      handlers[sub] = [=, &global] {
        require_json_format(global);
        const FiniteAction action = p->source.load();
        if (!p->subset.empty()) {
          const auto subset = parse_index_list(p->subset);
          const Theorem3Report r = verify_theorem3_exact(action, subset);
          json j = theorem3_json(r);
          j["action"] = action.name();
          j["subset"] = subset;
          return json_outcome(std::move(j), r.holds && r.nonarch_holds ? kSuccess : kBoundViolated);
        }
        const SweepReport r = sweep_theorem3(action, p->subset_size, p->samples, p->seed);
        json violations = json::array();
        for (const auto& v : r.violations) {
          violations.push_back({{"subset", v.subset}, {"nonarchimedean_branch", v.nonarchimedean_branch}});
        }
        return json_outcome({{"action", r.action},
                             {"order", action.group().order()},
                             {"nonarchimedean", r.nonarchimedean},
                             {"isometric", action.isometric()},
                             {"subsets_checked", r.subsets_checked},
                             {"equality_cases", r.equality_cases},
                             {"nonarch_equality_cases", r.nonarch_equality_cases},
                             {"sampled_sizes", r.sampled_sizes},
                             {"violations", std::move(violations)}},
                            r.violations.empty() ? kSuccess : kBoundViolated);
      };
    }
    {
      auto* sub = finite->add_subcommand("theorem4", "Two-letter bound on an isometric action");
      struct P {
        FiniteSource source;
        int a = 0, b = 0;
        long long m = 1, n = 1;
      };
      auto p = std::make_shared<P>();
      p->source.add_to(sub);
      sub->add_option("--a", p->a, "element index a")->required()->check(CLI::NonNegativeNumber);
      sub->add_option("--b", p->b, "element index b")->required()->check(CLI::NonNegativeNumber);
      sub->add_option("--M", p->m, "exponent range for a")->required()->check(CLI::PositiveNumber);
      sub->add_option("--N", p->n, "exponent range for b")->required()->check(CLI::PositiveNumber);
      handlers[sub] = [=, &global] {
        require_json_format(global);
        const FiniteAction action = p->source.load();
        const Theorem4Report r = verify_theorem4_exact(action, p->a, p->b, p->m, p->n);
        json j = {{"action", action.name()},
                  {"a", r.a},
                  {"b", r.b},
                  {"M", r.m_max},
                  {"N", r.n_max},
                  {"delta", rational_text(r.delta)},
                  {"argmin", r.argmin},
                  {"degenerate", r.degenerate},
                  {"bound", rational_text(r.bound)},
                  {"Phi_half_delta", rational_text(r.phi_half)},
                  {"holds", r.holds},
                  {"equality", r.equality},
                  {"nonarchimedean", r.nonarchimedean},
                  {"full_cardinality", r.full_cardinality},
                  {"collapse_matches", r.collapse_matches}};
        if (r.nonarchimedean) {
          j["Phi_delta"] = rational_text(r.phi_delta);
          j["nonarch_holds"] = r.nonarch_holds;
          j["nonarch_equality"] = r.nonarch_equality;
        }
        const bool ok = r.holds && r.nonarch_holds && r.collapse_matches;
        return json_outcome(std::move(j), ok ? kSuccess : kBoundViolated);
      };
    }
    {
      auto* sub = finite->add_subcommand("phi", "Exact phi table and Phi(t)");
      struct P {
        FiniteSource source;
        std::string t;
        bool emit_tables = false;
      };
      auto p = std::make_shared<P>();
      p->source.add_to(sub);
      sub->add_option("--t", p->t, "threshold for Phi(t), e.g. 3/2");
      sub->add_flag("--tables", p->emit_tables, "include the mul/act/dist tables");
      handlers[sub] = [=, &global] {
        require_json_format(global);
        const FiniteAction action = p->source.load();
        json phis = json::array();
        for (int g = 0; g < action.group().order(); ++g) phis.push_back(rational_text(action.phi(g)));
        json j = {{"action", action.name()},
                  {"order", action.group().order()},
                  {"identity", action.group().identity()},
                  {"isometric", action.isometric()},
                  {"nonarchimedean", action.space().nonarchimedean()},
                  {"phi", std::move(phis)}};
        if (!p->t.empty()) {
          const Rational t = parse_rational_flag(p->t);
          if (t < Rational(0)) throw UsageError("--t must be >= 0");
          j["t"] = rational_text(t);
          j["Phi"] = rational_text(Phi_exact(action, t));
        }
        if (p->emit_tables) j["tables"] = action_to_json(action);
        return json_outcome(std::move(j));
      };
    }
  }

  // replay ----------------------------------------------------------------
  std::string replay_file;
  bool replay_check = false;
  {
    auto* sub = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    sub->add_option("file", replay_file, "manifest written with --manifest")->required();
    sub->add_flag("--check", replay_check, "exit 1 unless the output is byte-identical");
    handlers[sub] = [&] {
      const json manifest = read_json_file(replay_file);
      if (!manifest.contains("argv") || !manifest.contains("output")) {
        throw UsageError(replay_file + " is not a manifest");
      }
      if (manifest.value("version", "") != UNIDIOPH_VERSION) {
        err << "warning: manifest was written by version " << manifest.value("version", "?")
            << ", this is " << UNIDIOPH_VERSION << "\n";
      }
      std::ostringstream replay_out;
      const int code = run(manifest.at("argv").get<std::vector<std::string>>(), replay_out, err);
      Outcome o;
      o.text = replay_out.str();
      o.exit_code = code;
      if (replay_check && o.text != manifest.at("output").get<std::string>()) {
        err << "replay output differs from the manifest\n";
        o.exit_code = kBoundViolated;
      }
      return o;
    };
  }

  // ------------------------------------------------------------ dispatch
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  const CLI::App* chosen = nullptr;
  std::string command;
  for (const CLI::App* sub : app.get_subcommands()) {
    chosen = sub;
    command = sub->get_name();
    for (const CLI::App* inner : sub->get_subcommands()) {
      chosen = inner;
      command += " " + inner->get_name();
    }
  }
  const auto it = handlers.find(chosen);
  if (it == handlers.end()) {
    err << "unidioph: no command given\n";
    return kUsageError;
  }

  Outcome outcome;
  try {
    outcome = it->second();
  } catch (const UsageError& e) {
    err << "unidioph " << command << ": usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    // Solver breakdowns are numerical failures; every other library error
    // traces back to the arguments or input files.
    const bool numerical = dynamic_cast<const EigensolverFailure*>(&e) != nullptr ||
                           dynamic_cast<const ConvergenceFailure*>(&e) != nullptr;
    err << "unidioph " << command << (numerical ? ": numerical failure: " : ": invalid input: ")
        << e.what() << "\n";
    return numerical ? kNumericalFailure : kUsageError;
  } catch (const json::exception& e) {
    err << "unidioph " << command << ": bad input: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::runtime_error& e) {
    err << "unidioph " << command << ": " << e.what() << "\n";
    return kUsageError;  } catch (const std::exception& e) {
    err << "unidioph " << command << ": internal failure: " << e.what() << "\n";
    return kNumericalFailure;
  }

  out << outcome.text;

  if (!global.manifest.empty() && command != "replay") {
    // Replay argv: everything but --manifest, with the effective worker count pinned.
    std::vector<std::string> argv;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--manifest") {
        ++i;
        continue;
      }
      if (args[i].rfind("--manifest=", 0) == 0) continue;
      if (args[i] == "--workers") {
        ++i;
        continue;
      }
      if (args[i].rfind("--workers=", 0) == 0) continue;
      argv.push_back(args[i]);
    }
    argv.push_back("--workers");
    argv.push_back(std::to_string(global.workers));

    json params = json::object();
    for (const CLI::Option* opt : chosen->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      params[opt->get_name()] = opt->results();
    }
    params["--workers"] = std::to_string(global.workers);
    params["--format"] = global.format;

    const json manifest = {{"tool", "unidioph"},
                           {"version", UNIDIOPH_VERSION},
                           {"command", command},
                           {"argv", argv},
                           {"params", params},
                           {"workers", global.workers},
                           {"timestamp", utc_timestamp()},
                           {"result", outcome.result},
                           {"output", outcome.text}};
    std::ofstream file(global.manifest);
    if (!file) {
      err << "unidioph: cannot write manifest " << global.manifest << "\n";
      return kUsageError;
    }
    file << manifest.dump(2) << "\n";
  }
  return outcome.exit_code;
}

}  // namespace unidioph::cli
