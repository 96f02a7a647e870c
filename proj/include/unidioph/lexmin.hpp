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

#include <cstddef>
#include <limits>
#include <vector>

#include "unidioph/parallel.hpp"

namespace unidioph {

struct MinLocation {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
  bool found = false;
};

/// Streaming minimum over an enumeration that also recovers the earliest
/// index whose value lies within `tol` of the final minimum.
///
/// Candidates are kept with strictly decreasing values, all within tol of
/// the running minimum; a later index with a value no smaller than an
/// earlier candidate can never be the answer and is dropped.
class LexMinTracker {
 public:
  explicit LexMinTracker(double tol) : tol_(tol) {}

  void observe(std::size_t index, double value) {
    if (!candidates_.empty() && !(value < candidates_.back().value)) return;
    candidates_.push_back({value, index, true});
    std::size_t drop = 0;
    while (candidates_[drop].value > value + tol_) ++drop;
    if (drop > 0) candidates_.erase(candidates_.begin(), candidates_.begin() + drop);
  }

  double running_min() const {
    return candidates_.empty() ? std::numeric_limits<double>::infinity()
                               : candidates_.back().value;
  }

  // Earliest candidate within tol of `global_min`.
  MinLocation first_within(double global_min) const {
    for (const auto& c : candidates_) {
      if (c.value <= global_min + tol_) return c;
    }
    return {};
  }

 private:
  double tol_;
  std::vector<MinLocation> candidates_;
};

/// Minimum of value_at(i) over [0, count), split across workers. The result,
/// including the tie-broken index, does not depend on the worker count.
template <class ValueAt>
MinLocation enumerate_min(std::size_t count, unsigned workers, double tol, ValueAt&& value_at) {
  std::vector<LexMinTracker> trackers(std::max(1u, workers), LexMinTracker(tol));
  parallel_slices(count, workers, [&](std::size_t begin, std::size_t end, std::size_t slice) {
    LexMinTracker& tracker = trackers[slice];
    for (std::size_t i = begin; i < end; ++i) tracker.observe(i, value_at(i));
  });
  double global_min = std::numeric_limits<double>::infinity();
  for (const auto& t : trackers) global_min = std::min(global_min, t.running_min());
  for (const auto& t : trackers) {
    const MinLocation loc = t.first_within(global_min);
    if (loc.found) return {global_min, loc.index, true};
  }
  return {};
}

}  // namespace unidioph
