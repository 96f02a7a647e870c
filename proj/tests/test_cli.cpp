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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "unidioph/cli.hpp"
#include "unidioph/haar.hpp"
#include "unidioph/io.hpp"

using namespace unidioph;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

// Matrix fixtures in the working directory of the test.
struct Fixtures {
  Fixtures() {
    write("cli_id2.json", R"({"n": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]})");
    write("cli_bad.json", R"({"n": 2, "re": [[1, 0], [0, 2]]})");
    write("cli_a.json", matrix_to_json_text(haar_sample(2, 1).matrix()));
    write("cli_b.json", matrix_to_json_text(haar_sample(2, 2).matrix()));
    write("cli_set.json", R"([{"n": 1, "re": [[1]]}, {"n": 1, "re": [[-1]]}])");
    write("cli_alphas.json", "[[0.6180339887498949]]");
  }
};

const Fixtures fixtures;

}  // namespace

TEST_CASE("phi of the identity") {
  const Run r = run({"phi", "--matrix", "cli_id2.json"});
  REQUIRE(r.code == cli::kSuccess);
  const json j = json::parse(r.out);
  CHECK(j.at("phi").get<double>() == 0.0);
  CHECK(j.at("witness").size() == 2);
}

TEST_CASE("verify --theorem 1 finds no violations and exits 0") {
  const Run r = run({"verify", "--theorem", "1", "--n", "2", "--cardinality", "16", "--trials", "100", "--seed", "7"});
  CHECK(r.code == cli::kSuccess);
  const json j = json::parse(r.out);
  CHECK(j.at("violations").empty());
  CHECK(j.at("cardinality") == 16);
}

TEST_CASE("usage errors exit 2 and name the flag") {
  Run r = run({"delta-jk", "--a", "cli_a.json", "--b", "cli_b.json", "--J", "0", "--K", "3"});
  CHECK(r.code == cli::kUsageError);
  CHECK(r.err.find("--J") != std::string::npos);

  CHECK(run({"no-such-command"}).code == cli::kUsageError);
  CHECK(run({}).code == cli::kUsageError);
  CHECK(run({"phi"}).code == cli::kUsageError);
  CHECK(run({"phi", "--matrix", "missing.json"}).code == cli::kUsageError);
  CHECK(run({"phi", "--matrix", "cli_bad.json"}).code == cli::kUsageError);
  CHECK(run({"phi-dist", "--n", "4", "--t", "1", "--method", "quadrature"}).code == cli::kUsageError);
  CHECK(run({"--format", "csv", "phi", "--matrix", "cli_id2.json"}).code == cli::kUsageError);
  CHECK(run({"finite", "phi"}).code == cli::kUsageError);
  CHECK(run({"finite", "theorem4", "--group", "s4", "--metric", "circular", "--a", "1", "--b", "2", "--M", "1",
             "--N", "1"})
            .code == cli::kUsageError);
}

TEST_CASE("help exits 0") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("delta-jk") != std::string::npos);
}

TEST_CASE("subcommands produce the documented fields") {
  json j = json::parse(run({"delta-set", "--matrices", "cli_set.json"}).out);
  CHECK(j.at("delta").get<double>() == 2.0);
  CHECK(j.at("argmin").at("kind") == "index_pair");

  j = json::parse(run({"delta-powers", "--a", "cli_a.json", "--n-max", "10"}).out);
  CHECK(j.at("evaluations") == 10);

  j = json::parse(run({"delta-jkl", "--a", "cli_a.json", "--b", "cli_b.json", "--c", "cli_a.json", "--J", "1",
                       "--K", "1", "--L", "1"})
                      .out);
  CHECK(j.at("conjectural") == true);

  j = json::parse(run({"torus-delta", "--alphas", "cli_alphas.json", "--ks", "10"}).out);
  CHECK(j.at("argmin").at("value") == json::array({8}));

  j = json::parse(run({"phi-dist", "--n", "1", "--t", "1", "--method", "quadrature"}).out);
  CHECK(std::abs(j.at("estimate").get<double>() - 1.0 / 3.0) < 1e-10);

  j = json::parse(run({"finite", "phi", "--group", "z12", "--t", "3/2"}).out);
  CHECK(j.at("Phi") == "1/4");

  j = json::parse(run({"finite", "verify", "--group", "s3", "--subset", "0,1,2,3,4,5"}).out);
  CHECK(j.at("nonarch_equality") == true);

  const Run t4 = run({"finite", "theorem4", "--group", "z12", "--a", "4", "--b", "3", "--M", "1", "--N", "1"});
  CHECK(t4.code == 0);
  CHECK(json::parse(t4.out).at("delta") == "1");
}

TEST_CASE("curves as CSV") {
  const Run r = run({"--format", "csv", "phi-curve", "--n", "1", "--steps", "4", "--samples", "1000"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,estimate,ci_low,ci_high,lower_bound");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 5);

  const Run torus = run({"--format", "csv", "torus-phi-curve", "--l", "2", "--steps", "5"});
  CHECK(torus.code == 0);
  CHECK(torus.out.rfind("t,estimate,ci_low,ci_high,lower_bound\n", 0) == 0);
}

TEST_CASE("manifest replay") {
  const Run first = run({"--manifest", "cli_manifest.json", "--workers", "2", "phi-dist", "--n", "2", "--t", "1",
                         "--samples", "2000", "--seed", "5"});
  REQUIRE(first.code == 0);
  const json m = read_json_file("cli_manifest.json");
  CHECK(m.at("tool") == "unidioph");
  CHECK(m.at("workers") == 2);
  CHECK(m.at("output") == first.out);
  CHECK(m.at("params").at("--seed") == json::array({"5"}));

  const Run replay = run({"replay", "cli_manifest.json", "--check"});
  CHECK(replay.code == 0);
  CHECK(replay.out == first.out);

  json tampered = m;
  tampered["output"] = "{}\n";
  write("cli_tampered.json", tampered.dump());
  CHECK(run({"replay", "cli_tampered.json", "--check"}).code == cli::kBoundViolated);
}

TEST_CASE("UNIDIOPH_WORKERS sets the default worker count") {
  ::setenv("UNIDIOPH_WORKERS", "3", 1);
  run({"--manifest", "cli_env.json", "haar", "--n", "1"});
  ::unsetenv("UNIDIOPH_WORKERS");
  CHECK(read_json_file("cli_env.json").at("workers") == 3);
}
