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
#include <filesystem>
#include <span>
#include <vector>

#include "dshash/codes.hpp"
#include "dshash/dataset.hpp"

namespace dshash {

/// Per query, the database indices of its ceil(percentile * n) nearest
/// neighbours in Euclidean distance, nearest first (ties by index).
struct GroundTruth {
  double percentile = 0.02;
  std::vector<std::vector<std::uint32_t>> per_query;
};

/// ceil(percentile * n), at least 1.
std::size_t truth_size(std::size_t database_size, double percentile);

GroundTruth ground_truth(const Dataset& database, const Dataset& queries,
                         double percentile = 0.02);

/// ivecs layout: per query, i32 count followed by count x i32 indices.
void save_ground_truth(const GroundTruth& truth, const std::filesystem::path& path);
GroundTruth load_ground_truth(const std::filesystem::path& path, double percentile);

/// Mean over true neighbours of precision at the rank where each appears,
/// scanning the whole ranking.
double average_precision(const Ranking& ranking, std::span<const std::uint32_t> truth);

double mean_average_precision(std::span<const Ranking> rankings,
                              std::span<const std::vector<std::uint32_t>> truths);
double mean_average_precision(std::span<const double> per_query_ap);

struct PRPoint {
  double recall = 0.0;
  double precision = 0.0;
  bool operator==(const PRPoint&) const = default;
};

/// (recall, precision) after each rank of the ranking.
struct PRCurve {
  std::vector<PRPoint> points;
};

PRCurve pr_curve(const Ranking& ranking, std::span<const std::uint32_t> truth);

/// 0.00, 0.05, ..., 1.00.
std::vector<double> recall_levels();

/// Precision at each recall level, linearly interpolated between the ranks
/// where a true neighbour was found. Precision at recall 0 is the precision
/// at the first hit.
std::vector<PRPoint> pr_at_recall_levels(const PRCurve& curve);

/// Pointwise mean of level-sampled curves.
std::vector<PRPoint> average_pr_curves(std::span<const std::vector<PRPoint>> curves);

}  // namespace dshash
