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


#include "dshash/dsh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dshash/errors.hpp"
#include "dshash/parallel.hpp"

namespace dshash {

bool AdjacencyMatrix::contains(std::uint32_t i, std::uint32_t j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(i, j));
}

AdjacencyMatrix adjacent_groups(const Matrix& centers, std::size_t radius) {
  const std::size_t k = centers.rows;
  if (k < 2) throw TrainingError("adjacent groups need at least 2 centers");
  if (radius < 1 || radius > k - 1) {
    throw TrainingError("radius r=" + std::to_string(radius) +
                        " out of range [1, " + std::to_string(k - 1) + "]");
  }
  std::vector<std::vector<std::uint32_t>> neighbors(k);
  parallel_for(0, k, [&](std::size_t i) {
    std::vector<std::pair<double, std::uint32_t>> dist;
    dist.reserve(k - 1);
    const auto ci = centers.row(i);
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      const auto cj = centers.row(j);
      double acc = 0.0;
      for (std::size_t c = 0; c < ci.size(); ++c) {
        const double diff = ci[c] - cj[c];
        acc += diff * diff;
      }
      dist.emplace_back(acc, static_cast<std::uint32_t>(j));
    }
    std::partial_sort(dist.begin(), dist.begin() + radius, dist.end());
    for (std::size_t m = 0; m < radius; ++m) neighbors[i].push_back(dist[m].second);
  }, 1);

  AdjacencyMatrix adj;
  adj.k = k;
  adj.pairs.reserve(k * radius);
  for (std::size_t i = 0; i < k; ++i) {
    for (auto j : neighbors[i]) {
      const auto a = static_cast<std::uint32_t>(std::min<std::size_t>(i, j));
      const auto b = static_cast<std::uint32_t>(std::max<std::size_t>(i, j));
      adj.pairs.emplace_back(a, b);
    }
  }
  std::sort(adj.pairs.begin(), adj.pairs.end());
  adj.pairs.erase(std::unique(adj.pairs.begin(), adj.pairs.end()), adj.pairs.end());
  return adj;
}

std::optional<Projection> median_plane(std::span<const double> mu1,
                                       std::span<const double> mu2) {
  if (mu1.size() != mu2.size()) throw DataError("median_plane: dimension mismatch");
  Projection p;
  p.w.resize(mu1.size());
  double norm2 = 0.0;
  double t = 0.0;
  for (std::size_t j = 0; j < mu1.size(); ++j) {
    p.w[j] = mu1[j] - mu2[j];
    norm2 += p.w[j] * p.w[j];
    t += 0.5 * (mu1[j] + mu2[j]) * p.w[j];
  }
  if (std::sqrt(norm2) <= kDegenerateDistance) return std::nullopt;
  p.t = t;
  return p;
}

double binary_entropy(double p0) {
  p0 = std::clamp(p0, 0.0, 1.0);
  const double p1 = 1.0 - p0;
  double h = 0.0;
  if (p0 > 0.0) h -= p0 * std::log2(p0);
  if (p1 > 0.0) h -= p1 * std::log2(p1);
  return std::clamp(h, 0.0, 1.0);
}

double candidate_entropy(const Projection& candidate, const Matrix& centers,
                         std::span<const std::size_t> group_sizes) {
  if (group_sizes.size() != centers.rows) {
    throw DataError("candidate_entropy: one group size per center required");
  }
  const double total = std::accumulate(group_sizes.begin(), group_sizes.end(), 0.0);
  if (total <= 0.0) throw DataError("candidate_entropy: empty groups");
  double p0 = 0.0;
  for (std::size_t g = 0; g < centers.rows; ++g) {
    if (!hash_bit(std::span<const double>(candidate.w), candidate.t, centers.row(g))) {
      p0 += double(group_sizes[g]) / total;
    }
  }
  return binary_entropy(p0);
}

double exact_entropy(const Projection& candidate, const Dataset& ds) {
  if (candidate.w.size() != ds.dim()) throw DataError("exact_entropy: dimension mismatch");
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!hash_bit(std::span<const double>(candidate.w), candidate.t, ds.row(i))) ++zeros;
  }
  return binary_entropy(double(zeros) / double(ds.size()));
}

std::vector<std::size_t> select_top_candidates(
    std::span<const ProjectionCandidate> candidates, std::size_t count) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].entropy > candidates[b].entropy;
  });
  order.resize(std::min(count, order.size()));
  return order;
}

DshTraining train_dsh_detailed(const Dataset& ds, const DshParams& params,
                               KMeansInit init) {
  if (params.bits < 1) throw TrainingError("code length must be >= 1");
  const std::size_t k = group_count_for(params.bits, params.alpha);
  if (k >= ds.size()) {
    throw TrainingError("DSH needs more points than groups (n=" +
                        std::to_string(ds.size()) + ", k=" + std::to_string(k) + ")");
  }
  if (params.radius < 1 || params.radius > k - 1) {
    throw TrainingError("radius r=" + std::to_string(params.radius) +
                        " out of range [1, " + std::to_string(k - 1) +
                        "] for k=" + std::to_string(k));
  }

  const Dataset centered_copy = ds.centered() ? ds : center(ds);
  const Dataset& data = centered_copy;

  DshTraining out;
  out.quantization = kmeans(data, k, params.iterations, params.seed, init);
  out.adjacency = adjacent_groups(out.quantization.centers, params.radius);

  const auto& centers = out.quantization.centers;
  for (const auto& [i, j] : out.adjacency.pairs) {
    auto plane = median_plane(centers.row(i), centers.row(j));
    if (!plane) {
      ++out.skipped_degenerate;
      continue;
    }
    out.candidates.push_back({std::move(*plane), {i, j}, 0.0});
  }
  parallel_for(0, out.candidates.size(), [&](std::size_t c) {
    out.candidates[c].entropy = candidate_entropy(out.candidates[c].plane, centers,
                                                  out.quantization.group_sizes);
  }, 16);

  if (out.candidates.size() < params.bits) {
    throw TrainingError("only " + std::to_string(out.candidates.size()) +
                        " candidate projections for " + std::to_string(params.bits) +
                        " bits (k=" + std::to_string(k) + ", r=" +
                        std::to_string(params.radius) + ", " +
                        std::to_string(out.skipped_degenerate) +
                        " degenerate); increase alpha or r");
  }

  out.selected = select_top_candidates(out.candidates, params.bits);
  out.model.method = Method::kDsh;
  out.model.training_mean = *data.mean();
  out.model.params = params;
  out.model.projections.reserve(params.bits);
  for (auto idx : out.selected) out.model.projections.push_back(out.candidates[idx].plane);
  return out;
}

HashModel train_dsh(const Dataset& ds, const DshParams& params) {
  return train_dsh_detailed(ds, params).model;
}

}  // namespace dshash
