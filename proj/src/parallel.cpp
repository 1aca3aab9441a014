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


#include "dshash/parallel.hpp"

#include <atomic>

namespace dshash {
namespace {
std::atomic<unsigned> g_max_threads{0};
}

void set_max_threads(unsigned threads) { g_max_threads.store(threads); }

unsigned max_threads() {
  const unsigned configured = g_max_threads.load();
  if (configured != 0) return configured;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace dshash
