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
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dshash {

/// n vectors of dimension d stored row-major in single precision. A centered
/// dataset carries the per-column mean that was subtracted from it.
class Dataset {
 public:
  /// Throws DataError unless n >= 1, d >= 1, values.size() == n*d and every
  /// entry is finite.
  Dataset(std::size_t n, std::size_t d, std::vector<float> values);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  std::span<const float> values() const { return values_; }
  std::span<const float> row(std::size_t i) const {
    return {values_.data() + i * d_, d_};
  }

  bool centered() const { return mean_.has_value(); }
  const std::optional<std::vector<double>>& mean() const { return mean_; }

  /// Writes row i in original (uncentered) coordinates.
  void copy_raw_row(std::size_t i, std::span<double> out) const;

  /// Per-column mean computed with 64-bit accumulation.
  std::vector<double> column_means() const;

  /// Rows at the given indices, in the given order. Only defined for
  /// uncentered datasets.
  Dataset select_rows(std::span<const std::size_t> indices) const;

  bool operator==(const Dataset&) const = default;

 private:
  friend Dataset center(const Dataset& ds);

  std::size_t n_;
  std::size_t d_;
  std::vector<float> values_;
  std::optional<std::vector<double>> mean_;
};

/// Subtracts the column mean; rejects already-centered input.
Dataset center(const Dataset& ds);

Dataset load_fvecs(const std::filesystem::path& path);
Dataset load_bvecs(const std::filesystem::path& path);
void write_fvecs(const Dataset& ds, const std::filesystem::path& path);
void write_bvecs(const Dataset& ds, const std::filesystem::path& path);

/// Picks the loader by extension (.fvecs / .bvecs).
Dataset load_vectors(const std::filesystem::path& path);

struct GaussianMixtureSpec {
  std::size_t num_clusters = 4;
  std::size_t points_per_cluster = 100;
  std::size_t dim = 2;
  double cluster_std = 0.1;
  double center_box_half_width = 5.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LabeledDataset {
  Dataset data;
  std::vector<std::uint32_t> labels;
};

/// Cluster centers uniform in the box, points are center + N(0, std^2 I).
/// Points are emitted cluster by cluster.
LabeledDataset generate_gaussian_mixture(const GaussianMixtureSpec& spec);

/// Same as above with caller-chosen centers (one per row).
LabeledDataset generate_gaussian_mixture(
    const std::vector<std::vector<double>>& centers,
    std::size_t points_per_cluster, double cluster_std, std::uint64_t seed);

/// Seeded disjoint split into (queries, database); both keep original order.
struct Split {
  std::vector<std::size_t> query_indices;
  std::vector<std::size_t> database_indices;
};
Split random_split(std::size_t n, std::size_t query_count, std::uint64_t seed);

}  // namespace dshash
