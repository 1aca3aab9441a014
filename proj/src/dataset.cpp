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


#include "dshash/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "dshash/binary_io.hpp"
#include "dshash/errors.hpp"

namespace dshash {
namespace {

constexpr std::int32_t kMaxDim = 100000;

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::int32_t decode_i32(const unsigned char* p) {
  const std::uint32_t u = std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
                          (std::uint32_t(p[2]) << 16) |
                          (std::uint32_t(p[3]) << 24);
  return static_cast<std::int32_t>(u);
}

float decode_f32(const unsigned char* p) {
  const std::uint32_t u = std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
                          (std::uint32_t(p[2]) << 16) |
                          (std::uint32_t(p[3]) << 24);
  return std::bit_cast<float>(u);
}

// Parses [int32 d][d x component] records; component_size is 4 (float32) or
// 1 (uint8).
Dataset parse_vecs(const std::vector<unsigned char>& bytes,
                   std::size_t component_size, const std::string& name) {
  if (bytes.empty()) throw DataError(name + ": no records");
  std::vector<float> values;
  std::size_t offset = 0;
  std::int32_t dim = 0;
  std::size_t n = 0;
  while (offset < bytes.size()) {
    if (bytes.size() - offset < 4) {
      throw DataError(name + ": truncated record header at byte offset " +
                      std::to_string(offset));
    }
    const std::int32_t d = decode_i32(bytes.data() + offset);
    if (d <= 0 || d > kMaxDim) {
      throw DataError(name + ": invalid dimension " + std::to_string(d) +
                      " at byte offset " + std::to_string(offset));
    }
    if (n == 0) {
      dim = d;
      values.reserve(bytes.size() / (4 + component_size * std::size_t(d)) *
                     std::size_t(d));
    } else if (d != dim) {
      throw DataError(name + ": dimension mismatch (" + std::to_string(d) +
                      " vs " + std::to_string(dim) + ") at byte offset " +
                      std::to_string(offset));
    }
    const std::size_t payload = component_size * std::size_t(d);
    if (bytes.size() - offset - 4 < payload) {
      throw DataError(name + ": truncated record at byte offset " +
                      std::to_string(offset));
    }
    const unsigned char* p = bytes.data() + offset + 4;
    for (std::int32_t j = 0; j < d; ++j) {
      values.push_back(component_size == 4 ? decode_f32(p + 4 * j)
                                           : static_cast<float>(p[j]));
    }
    offset += 4 + payload;
    ++n;
  }
  return Dataset(n, std::size_t(dim), std::move(values));
}

}  // namespace

Dataset::Dataset(std::size_t n, std::size_t d, std::vector<float> values)
    : n_(n), d_(d), values_(std::move(values)) {
  if (n_ == 0) throw DataError("dataset has no records");
  if (d_ == 0) throw DataError("dataset dimension must be >= 1");
  if (values_.size() != n_ * d_) {
    throw DataError("dataset holds " + std::to_string(values_.size()) +
                    " values, expected " + std::to_string(n_ * d_));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("non-finite value at row " + std::to_string(i / d_) +
                      ", column " + std::to_string(i % d_));
    }
  }
}

void Dataset::copy_raw_row(std::size_t i, std::span<double> out) const {
  const auto r = row(i);
  if (mean_) {
    for (std::size_t j = 0; j < d_; ++j) out[j] = double(r[j]) + (*mean_)[j];
  } else {
    std::copy(r.begin(), r.end(), out.begin());
  }
}

std::vector<double> Dataset::column_means() const {
  std::vector<double> mean(d_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto r = row(i);
    for (std::size_t j = 0; j < d_; ++j) mean[j] += r[j];
  }
  for (double& m : mean) m /= double(n_);
  return mean;
}

Dataset Dataset::select_rows(std::span<const std::size_t> indices) const {
  if (centered()) throw DataError("select_rows requires an uncentered dataset");
  std::vector<float> out;
  out.reserve(indices.size() * d_);
  for (std::size_t idx : indices) {
    if (idx >= n_) throw DataError("row index out of range");
    const auto r = row(idx);
    out.insert(out.end(), r.begin(), r.end());
  }
  return Dataset(indices.size(), d_, std::move(out));
}

Dataset center(const Dataset& ds) {
  if (ds.centered()) throw DataError("dataset is already centered");
  std::vector<double> mean = ds.column_means();
  std::vector<float> values(ds.values().begin(), ds.values().end());
  const std::size_t d = ds.dim();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      values[i * d + j] = static_cast<float>(double(values[i * d + j]) - mean[j]);
    }
  }
  Dataset out(ds.size(), d, std::move(values));
  out.mean_ = std::move(mean);
  return out;
}

Dataset load_fvecs(const std::filesystem::path& path) {
  return parse_vecs(read_all(path), 4, path.string());
}

Dataset load_bvecs(const std::filesystem::path& path) {
  return parse_vecs(read_all(path), 1, path.string());
}

void write_fvecs(const Dataset& ds, const std::filesystem::path& path) {
  io::write_file_atomically(path, [&](std::ostream& out) {
    const auto d = static_cast<std::int32_t>(ds.dim());
    for (std::size_t i = 0; i < ds.size(); ++i) {
      io::write_le(out, d);
      for (float v : ds.row(i)) io::write_le(out, v);
    }
  });
}

void write_bvecs(const Dataset& ds, const std::filesystem::path& path) {
  for (float v : ds.values()) {
    if (v < 0.0f || v > 255.0f || v != std::floor(v)) {
      throw DataError("bvecs components must be integers in [0, 255]");
    }
  }
  io::write_file_atomically(path, [&](std::ostream& out) {
    const auto d = static_cast<std::int32_t>(ds.dim());
    for (std::size_t i = 0; i < ds.size(); ++i) {
      io::write_le(out, d);
      for (float v : ds.row(i)) out.put(static_cast<char>(static_cast<unsigned char>(v)));
    }
  });
}

Dataset load_vectors(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".fvecs") return load_fvecs(path);
  if (ext == ".bvecs") return load_bvecs(path);
  throw DataError("unrecognized vector file extension '" + ext +
                  "' (expected .fvecs or .bvecs)");
}

void GaussianMixtureSpec::validate() const {
  if (num_clusters < 1 || points_per_cluster < 1 || dim < 1) {
    throw std::invalid_argument("mixture counts must all be >= 1");
  }
  if (!(cluster_std > 0.0) || !(center_box_half_width > 0.0)) {
    throw std::invalid_argument("mixture std and half-width must be > 0");
  }
}

LabeledDataset generate_gaussian_mixture(const GaussianMixtureSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> box(-spec.center_box_half_width,
                                             spec.center_box_half_width);
  std::vector<std::vector<double>> centers(spec.num_clusters,
                                           std::vector<double>(spec.dim));
  for (auto& c : centers) {
    for (double& x : c) x = box(rng);
  }
  // Point noise comes from a stream derived from the same seed so the centers
  // do not shift when points_per_cluster changes.
  return generate_gaussian_mixture(centers, spec.points_per_cluster,
                                   spec.cluster_std,
                                   spec.seed ^ 0x9e3779b97f4a7c15ULL);
}

LabeledDataset generate_gaussian_mixture(
    const std::vector<std::vector<double>>& centers,
    std::size_t points_per_cluster, double cluster_std, std::uint64_t seed) {
  if (centers.empty() || centers.front().empty() || points_per_cluster == 0) {
    throw std::invalid_argument("mixture needs at least one center and point");
  }
  if (!(cluster_std > 0.0)) throw std::invalid_argument("cluster_std must be > 0");
  const std::size_t d = centers.front().size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, cluster_std);
  std::vector<float> values;
  values.reserve(centers.size() * points_per_cluster * d);
  std::vector<std::uint32_t> labels;
  labels.reserve(centers.size() * points_per_cluster);
  for (std::size_t c = 0; c < centers.size(); ++c) {
    if (centers[c].size() != d) throw std::invalid_argument("ragged centers");
    for (std::size_t i = 0; i < points_per_cluster; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        values.push_back(static_cast<float>(centers[c][j] + noise(rng)));
      }
      labels.push_back(static_cast<std::uint32_t>(c));
    }
  }
  Dataset data(labels.size(), d, std::move(values));
  return {std::move(data), std::move(labels)};
}

Split random_split(std::size_t n, std::size_t query_count, std::uint64_t seed) {
  if (query_count == 0 || query_count >= n) {
    throw std::invalid_argument("query count must be in [1, n)");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first query_count slots are a uniform sample.
  for (std::size_t i = 0; i < query_count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(perm[i], perm[pick(rng)]);
  }
  std::vector<char> is_query(n, 0);
  for (std::size_t i = 0; i < query_count; ++i) is_query[perm[i]] = 1;
  Split split;
  split.query_indices.reserve(query_count);
  split.database_indices.reserve(n - query_count);
  for (std::size_t i = 0; i < n; ++i) {
    (is_query[i] ? split.query_indices : split.database_indices).push_back(i);
  }
  return split;
}

}  // namespace dshash
