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

#include <complex>
#include <cstdint>
#include <initializer_list>

namespace unidioph {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derive an independent child key from a parent key and a path of indices.
// derive_seed(s, {trial, i}) is the key for sample i of trial `trial`.
constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t key = mix64(parent ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t index : path) {
    key = mix64(key + 0x9e3779b97f4a7c15ULL * (index + 1));
  }
  return key;
}

/// Counter-based generator: output i is mix64(key + gamma * (i + 1)).
///
/// The whole stream is a pure function of (key, counter), so any stream can
/// be split off with derive_seed and replayed bit-for-bit on any platform.
/// Normal variates use Box-Muller with our own uniform mapping rather than
/// std::normal_distribution, whose output is implementation-defined.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + 0x9e3779b97f4a7c15ULL * counter_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  double normal();

  // Standard complex Gaussian: real and imaginary parts independent N(0, 1).
  std::complex<double> complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace unidioph
