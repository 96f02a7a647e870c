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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "unidioph/finite.hpp"
#include "unidioph/linalg.hpp"
#include "unidioph/torus.hpp"

namespace unidioph {

using json = nlohmann::json;

// {"n": N, "re": [[...]], "im": [[...]]}, row-major. A missing "im" means zero.
ComplexMatrix matrix_from_json(const json& j);
json matrix_to_json(const ComplexMatrix& m);
// The same object as text, every number in shortest round-trip form.
std::string matrix_to_json_text(const ComplexMatrix& m);

json read_json_file(const std::filesystem::path& path);
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

// A JSON array of matrix objects, or a directory whose *.json files (in
// filename order) each hold one matrix.
std::vector<ComplexMatrix> read_matrix_collection(const std::filesystem::path& path);

// A number, an integer, or a "p/q" string.
Rational rational_from_json(const json& j);

// {"mul": [[...]], "act": [[...]], "dist": [[...]]}.
FiniteAction action_from_json(const json& j, std::string name = "file");
json action_to_json(const FiniteAction& action);

// [[a_11, ..., a_1L], ...] or, for L = 1, a flat list of numbers.
std::vector<TorusPoint> alphas_from_json(const json& j);

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace unidioph
