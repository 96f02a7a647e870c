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

#include "unidioph/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "unidioph/errors.hpp"

namespace unidioph {

namespace fs = std::filesystem;

namespace {

std::vector<std::vector<double>> real_rows(const json& j, const char* key, std::size_t n) {
  if (!j.contains(key)) throw DimensionError(std::string("matrix JSON is missing '") + key + "'");
  const json& rows = j.at(key);
  if (!rows.is_array() || rows.size() != n) {
    throw DimensionError(std::string("matrix JSON '") + key + "' must have n rows");
  }
  std::vector<std::vector<double>> out;
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != n) {
      throw DimensionError(std::string("matrix JSON '") + key + "' rows must have n entries");
    }
    std::vector<double> r;
    for (const json& v : row) {
      if (!v.is_number()) throw NonFiniteEntry("matrix entries must be numbers");
      r.push_back(v.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  // Shortest text that parses back to the same double.
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n")) throw DimensionError("matrix JSON needs an 'n' field");
  const long long n = j.at("n").get<long long>();
  if (n < 1 || n > kMaxDimension) throw DimensionError("matrix dimension out of range");
  const auto size = static_cast<std::size_t>(n);
  const auto re = real_rows(j, "re", size);
  ComplexMatrix m(n, n);
  if (j.contains("im")) {
    const auto im = real_rows(j, "im", size);
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  } else {
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c) m(r, c) = Complex(re[r][c], 0.0);
  }
  require_square_finite(m);
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ii = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

std::string matrix_to_json_text(const ComplexMatrix& m) {
  std::ostringstream os;
  const auto part = [&](const char* key, auto&& get) {
    os << "\"" << key << "\": [";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      os << (r ? ", [" : "[");
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        os << (c ? ", " : "") << format_double(get(m(r, c)));
      }
      os << "]";
    }
    os << "]";
  };
  os << "{\"n\": " << m.rows() << ", ";
  part("re", [](const Complex& z) { return z.real(); });
  os << ", ";
  part("im", [](const Complex& z) { return z.imag(); });
  os << "}";
  return os.str();
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("invalid JSON in " + path.string() + ": " + e.what());
  }
}

ComplexMatrix read_matrix_file(const fs::path& path) { return matrix_from_json(read_json_file(path)); }

std::vector<ComplexMatrix> read_matrix_collection(const fs::path& path) {
  std::vector<ComplexMatrix> out;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back(read_matrix_file(f));
    return out;
  }
  const json j = read_json_file(path);
  const json& list = j.is_object() && j.contains("matrices") ? j.at("matrices") : j;
  if (!list.is_array()) throw DimensionError("expected a JSON array of matrices");
  for (const json& m : list) out.push_back(matrix_from_json(m));
  return out;
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s));
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw InvalidStructure("cannot parse rational '" + s + "'");
    }
  }
  if (j.is_number_float()) {
    // Only exact binary fractions with a small denominator are accepted.
    const double v = j.get<double>();
    for (std::int64_t den = 1; den <= (1LL << 20); den *= 2) {
      const double num = v * static_cast<double>(den);
      if (num == std::floor(num) && std::abs(num) < 9e15) {
        return Rational(static_cast<std::int64_t>(num), den);
      }
    }
    throw InvalidStructure("distance is not an exact rational; write it as \"p/q\"");
  }
  throw InvalidStructure("distance entries must be integers or \"p/q\" strings");
}

FiniteAction action_from_json(const json& j, std::string name) {
  for (const char* key : {"mul", "act", "dist"}) {
    if (!j.contains(key)) throw InvalidStructure(std::string("action JSON is missing '") + key + "'");
  }
  Table mul = j.at("mul").get<Table>();
  Table act = j.at("act").get<Table>();
  std::vector<std::vector<Rational>> dist;
  for (const json& row : j.at("dist")) {
    std::vector<Rational> r;
    for (const json& v : row) r.push_back(rational_from_json(v));
    dist.push_back(std::move(r));
  }
  return FiniteAction(FiniteGroup::from_table(std::move(mul)), FiniteMetricSpace(std::move(dist)),
                      std::move(act), std::move(name));
}

json action_to_json(const FiniteAction& action) {
  json dist = json::array();
  for (const auto& row : action.space().table()) {
    json r = json::array();
    for (const Rational& v : row) {
      if (v.denominator() == 1) {
        r.push_back(v.numerator());
      } else {
        r.push_back(to_string(v));
      }
    }
    dist.push_back(std::move(r));
  }
  return {{"mul", action.group().table()}, {"act", action.table()}, {"dist", std::move(dist)}};
}

std::vector<TorusPoint> alphas_from_json(const json& j) {
  const json& list = j.is_object() && j.contains("alphas") ? j.at("alphas") : j;
  if (!list.is_array() || list.empty()) throw DimensionError("alphas must be a non-empty array");
  std::vector<TorusPoint> out;
  for (const json& a : list) {
    if (a.is_number()) {
      out.emplace_back(std::vector<double>{a.get<double>()});
    } else {
      out.emplace_back(a.get<std::vector<double>>());
    }
  }
  return out;
}

}  // namespace unidioph
