// Copyright 2026 The dshash Authors.
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
#include <thread>
#include <vector>

namespace dshash {

/// Upper bound on worker threads used by the library. 0 restores the default
/// (hardware concurrency).
void set_max_threads(unsigned threads);
unsigned max_threads();

/// Runs body(i) for i in [begin, end) over contiguous static chunks. Results
/// must not depend on the chunking; callers that reduce write per-index
/// partials and sum them sequentially afterwards.
template <class Body>
void parallel_for(std::size_t begin, std::size_t end, Body&& body,
                  std::size_t min_chunk = 256) {
  if (end <= begin) return;
  const std::size_t count = end - begin;
  const std::size_t workers =
      std::min<std::size_t>(max_threads(), (count + min_chunk - 1) / min_chunk);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t lo = begin + w * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (std::size_t i = begin; i < std::min(end, begin + chunk); ++i) body(i);
}

}  // namespace dshash
