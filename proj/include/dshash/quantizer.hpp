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

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "dshash/dataset.hpp"
#include "dshash/matrix.hpp"

namespace dshash {

enum class KMeansInit {
  /// k distinct input points drawn uniformly without replacement.
  kForgy,
  /// D^2-weighted seeding (k-means++).
  kPlusPlus,
};

/// Result of capped Lloyd iterations. Every group is non-empty and every
/// center is the mean of its members.
struct Quantization {
  std::size_t k = 0;
  Matrix centers;  // k x d
  std::vector<std::uint32_t> assignment;
  std::vector<std::size_t> group_sizes;
  double sse = 0.0;
  int iterations_run = 0;
  /// SSE after each completed iteration.
  std::vector<double> sse_trace;
};

/// Lloyd's algorithm capped at `iterations` rounds, stopping early when the
/// assignment no longer changes. Ties go to the lowest center index; a group
/// that empties is reseeded with the point farthest from its own center.
Quantization kmeans(const Dataset& ds, std::size_t k, int iterations,
                    std::uint64_t seed,
                    KMeansInit init = KMeansInit::kPlusPlus);

/// Sum over points of squared distance to their assigned center.
double sse(const Dataset& ds, const Quantization& q);

/// round(alpha * L), clamped to at least 2.
std::size_t group_count_for(std::size_t code_length, double alpha);

/// "iteration,sse" rows, one per completed iteration.
void write_sse_trace_csv(const Quantization& q, std::ostream& out);

}  // namespace dshash
