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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dshash/dataset.hpp"
#include "dshash/hash_model.hpp"
#include "dshash/matrix.hpp"
#include "dshash/quantizer.hpp"

namespace dshash {

/// Unordered pairs (i < j) of groups where one center is among the other's r
/// nearest centers. Pairs are sorted ascending.
struct AdjacencyMatrix {
  std::size_t k = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;

  bool contains(std::uint32_t i, std::uint32_t j) const;
};

AdjacencyMatrix adjacent_groups(const Matrix& centers, std::size_t radius);

/// Centers closer than this are treated as coincident.
inline constexpr double kDegenerateDistance = 1e-12;

/// Hyperplane halfway between two centers, normal along mu1 - mu2:
/// w = mu1 - mu2, t = ((mu1 + mu2) / 2) . w. nullopt for coincident centers.
std::optional<Projection> median_plane(std::span<const double> mu1,
                                       std::span<const double> mu2);

/// Shannon entropy in bits of a two-way split with fraction p0 on side 0.
double binary_entropy(double p0);

/// Split entropy estimated from group centers weighted by group size.
double candidate_entropy(const Projection& candidate, const Matrix& centers,
                         std::span<const std::size_t> group_sizes);

/// Split entropy over every point of the dataset (stored coordinates).
double exact_entropy(const Projection& candidate, const Dataset& ds);

struct ProjectionCandidate {
  Projection plane;
  std::pair<std::uint32_t, std::uint32_t> source_pair;
  double entropy = 0.0;
};

/// Intermediate products of a training run, kept for inspection and tests.
struct DshTraining {
  HashModel model;
  Quantization quantization;
  AdjacencyMatrix adjacency;
  /// All non-degenerate candidates in generation (pair) order.
  std::vector<ProjectionCandidate> candidates;
  /// Indices into candidates, best first; size == model.bits().
  std::vector<std::size_t> selected;
  std::size_t skipped_degenerate = 0;
};

/// Full training: center, k-means with k = round(alpha * L), r-adjacent
/// groups, one median plane per pair, weighted-center entropy, keep the L
/// highest-entropy planes (stable on ties).
DshTraining train_dsh_detailed(const Dataset& ds, const DshParams& params,
                               KMeansInit init = KMeansInit::kPlusPlus);

HashModel train_dsh(const Dataset& ds, const DshParams& params);

/// Stable descending order by entropy, truncated to `count`.
std::vector<std::size_t> select_top_candidates(
    std::span<const ProjectionCandidate> candidates, std::size_t count);

}  // namespace dshash
