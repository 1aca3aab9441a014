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


#include "dshash/quantizer.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "dshash/errors.hpp"
#include "dshash/parallel.hpp"

namespace dshash {
namespace {

double squared_distance(std::span<const float> x, std::span<const double> c) {
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double diff = double(x[j]) - c[j];
    acc += diff * diff;
  }
  return acc;
}

void set_center_to_point(Matrix& centers, std::size_t g, std::span<const float> x) {
  auto c = centers.row(g);
  std::copy(x.begin(), x.end(), c.begin());
}

Matrix seed_forgy(const Dataset& ds, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = ds.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Matrix centers(k, ds.dim());
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(perm[i], perm[pick(rng)]);
    set_center_to_point(centers, i, ds.row(perm[i]));
  }
  return centers;
}

Matrix seed_plus_plus(const Dataset& ds, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = ds.size();
  Matrix centers(k, ds.dim());
  std::vector<char> chosen(n, 0);
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  std::size_t pick = first(rng);
  chosen[pick] = 1;
  set_center_to_point(centers, 0, ds.row(pick));

  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t c = 1; c < k; ++c) {
    const auto last = centers.row(c - 1);
    parallel_for(0, n, [&](std::size_t i) {
      nearest[i] = std::min(nearest[i], squared_distance(ds.row(i), last));
    });
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += chosen[i] ? 0.0 : nearest[i];
    pick = n;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double running = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i] || nearest[i] <= 0.0) continue;
        running += nearest[i];
        pick = i;
        if (running > target) break;
      }
    }
    if (pick == n) {
      // Fewer distinct points than k: fall back to a uniform unchosen point.
      std::vector<std::size_t> rest;
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) rest.push_back(i);
      }
      std::uniform_int_distribution<std::size_t> any(0, rest.size() - 1);
      pick = rest[any(rng)];
    }
    chosen[pick] = 1;
    set_center_to_point(centers, c, ds.row(pick));
  }
  return centers;
}

// Index of the nearest center, lowest index on ties.
std::uint32_t nearest_center(std::span<const float> x, const Matrix& centers,
                             double* best_out) {
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t best_idx = 0;
  for (std::size_t c = 0; c < centers.rows; ++c) {
    const double dist = squared_distance(x, centers.row(c));
    if (dist < best) {
      best = dist;
      best_idx = static_cast<std::uint32_t>(c);
    }
  }
  if (best_out) *best_out = best;
  return best_idx;
}

void recompute_centers(const Dataset& ds, const std::vector<std::uint32_t>& assignment,
                       const std::vector<std::size_t>& sizes, Matrix& centers) {
  std::fill(centers.data.begin(), centers.data.end(), 0.0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto c = centers.row(assignment[i]);
    const auto x = ds.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) c[j] += x[j];
  }
  for (std::size_t g = 0; g < centers.rows; ++g) {
    auto c = centers.row(g);
    const double inv = 1.0 / double(sizes[g]);
    for (double& v : c) v *= inv;
  }
}

double total_sse(const Dataset& ds, const std::vector<std::uint32_t>& assignment,
                 const Matrix& centers) {
  std::vector<double> per_point(ds.size());
  parallel_for(0, ds.size(), [&](std::size_t i) {
    per_point[i] = squared_distance(ds.row(i), centers.row(assignment[i]));
  });
  return std::accumulate(per_point.begin(), per_point.end(), 0.0);
}

}  // namespace

Quantization kmeans(const Dataset& ds, std::size_t k, int iterations,
                    std::uint64_t seed, KMeansInit init) {
  const std::size_t n = ds.size();
  if (k < 1) throw TrainingError("k-means needs k >= 1");
  if (k >= n) {
    throw TrainingError("k-means needs k < n (k=" + std::to_string(k) +
                        ", n=" + std::to_string(n) + ")");
  }
  if (iterations < 1) throw TrainingError("k-means needs at least one iteration");

  std::mt19937_64 rng(seed);
  Quantization q;
  q.k = k;
  q.centers = init == KMeansInit::kForgy ? seed_forgy(ds, k, rng)
                                         : seed_plus_plus(ds, k, rng);
  q.assignment.assign(n, std::numeric_limits<std::uint32_t>::max());
  q.group_sizes.assign(k, 0);

  std::vector<std::uint32_t> next(n);
  std::vector<double> dist(n);
  for (int iter = 1; iter <= iterations; ++iter) {
    parallel_for(0, n, [&](std::size_t i) {
      next[i] = nearest_center(ds.row(i), q.centers, &dist[i]);
    });
    if (iter > 1 && next == q.assignment) break;
    q.assignment.swap(next);

    std::fill(q.group_sizes.begin(), q.group_sizes.end(), 0);
    for (auto a : q.assignment) ++q.group_sizes[a];

    // Empty-group repair: steal the worst-served point from a group that can
    // spare it.
    for (std::size_t g = 0; g < k; ++g) {
      if (q.group_sizes[g] != 0) continue;
      std::size_t victim = n;
      double worst = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (q.group_sizes[q.assignment[i]] > 1 && dist[i] > worst) {
          worst = dist[i];
          victim = i;
        }
      }
      --q.group_sizes[q.assignment[victim]];
      q.assignment[victim] = static_cast<std::uint32_t>(g);
      q.group_sizes[g] = 1;
      dist[victim] = 0.0;
      set_center_to_point(q.centers, g, ds.row(victim));
    }

    recompute_centers(ds, q.assignment, q.group_sizes, q.centers);
    q.sse_trace.push_back(total_sse(ds, q.assignment, q.centers));
    q.iterations_run = iter;
  }
  q.sse = q.sse_trace.back();
  return q;
}

double sse(const Dataset& ds, const Quantization& q) {
  if (q.centers.cols != ds.dim()) {
    throw DataError("quantization dimension " + std::to_string(q.centers.cols) +
                    " does not match dataset dimension " +
                    std::to_string(ds.dim()));
  }
  if (q.assignment.size() != ds.size()) {
    throw DataError("quantization assignment does not match dataset size");
  }
  for (auto a : q.assignment) {
    if (a >= q.centers.rows) throw DataError("assignment index out of range");
  }
  return total_sse(ds, q.assignment, q.centers);
}

std::size_t group_count_for(std::size_t code_length, double alpha) {
  if (code_length < 1) throw std::invalid_argument("code length must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  const auto k = static_cast<std::size_t>(std::llround(alpha * double(code_length)));
  return std::max<std::size_t>(k, 2);
}

void write_sse_trace_csv(const Quantization& q, std::ostream& out) {
  out << "iteration,sse\n";
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < q.sse_trace.size(); ++i) {
    out << (i + 1) << ',' << q.sse_trace[i] << '\n';
  }
  out.precision(old_precision);
}

}  // namespace dshash
