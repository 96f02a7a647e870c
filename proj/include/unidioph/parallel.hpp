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

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace unidioph {

/// Split [0, count) into at most `workers` contiguous slices and run
/// fn(begin, end, slice) on each, one thread per slice. Slice boundaries
/// depend only on (count, workers). The first exception thrown by any slice
/// is rethrown on the calling thread.
template <class Fn>
void parallel_slices(std::size_t count, unsigned workers, Fn&& fn) {
  const std::size_t slices =
      std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
  if (slices == 1) {
    fn(std::size_t{0}, count, std::size_t{0});
    return;
  }
  std::vector<std::exception_ptr> errors(slices);
  std::vector<std::thread> threads;
  threads.reserve(slices);
  for (std::size_t s = 0; s < slices; ++s) {
    const std::size_t begin = count * s / slices;
    const std::size_t end = count * (s + 1) / slices;
    threads.emplace_back([&, begin, end, s] {
      try {
        fn(begin, end, s);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace unidioph
