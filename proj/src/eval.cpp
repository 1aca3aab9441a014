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


#include "dshash/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dshash/binary_io.hpp"
#include "dshash/errors.hpp"
#include "dshash/parallel.hpp"

namespace dshash {
namespace {

std::vector<char> truth_mask(std::span<const std::uint32_t> truth, std::size_t n) {
  if (truth.empty()) throw std::invalid_argument("empty truth set");
  std::vector<char> mask(n, 0);
  for (auto t : truth) {
    if (t >= n) throw DataError("truth index " + std::to_string(t) + " out of range");
    mask[t] = 1;
  }
  return mask;
}

}  // namespace

std::size_t truth_size(std::size_t database_size, double percentile) {
  if (!(percentile > 0.0 && percentile < 1.0)) {
    throw std::invalid_argument("percentile must be in (0, 1)");
  }
  // The epsilon absorbs representation error such as 0.02 * 100 landing a
  // hair above 2.
  const double raw = percentile * double(database_size);
  const auto count = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::clamp<std::size_t>(count, 1, database_size);
}

GroundTruth ground_truth(const Dataset& database, const Dataset& queries,
                         double percentile) {
  if (database.dim() != queries.dim()) {
    throw DataError("ground truth: database dimension " + std::to_string(database.dim()) +
                    " differs from query dimension " + std::to_string(queries.dim()));
  }
  const std::size_t n = database.size();
  const std::size_t d = database.dim();
  const std::size_t keep = truth_size(n, percentile);
  const double* db_offset = database.centered() ? database.mean()->data() : nullptr;

  GroundTruth gt;
  gt.percentile = percentile;
  gt.per_query.resize(queries.size());
  parallel_for(0, queries.size(), [&](std::size_t q) {
    std::vector<double> query(d);
    queries.copy_raw_row(q, query);
    std::vector<std::pair<double, std::uint32_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = database.row(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double x = db_offset ? double(r[j]) + db_offset[j] : double(r[j]);
        const double diff = query[j] - x;
        acc += diff * diff;
      }
      dist[i] = {acc, static_cast<std::uint32_t>(i)};
    }
    std::partial_sort(dist.begin(), dist.begin() + keep, dist.end());
    auto& out = gt.per_query[q];
    out.resize(keep);
    for (std::size_t m = 0; m < keep; ++m) out[m] = dist[m].second;
  }, 1);
  return gt;
}

void save_ground_truth(const GroundTruth& truth, const std::filesystem::path& path) {
  io::write_file_atomically(path, [&](std::ostream& out) {
    for (const auto& set : truth.per_query) {
      io::write_le(out, static_cast<std::int32_t>(set.size()));
      for (auto idx : set) io::write_le(out, static_cast<std::int32_t>(idx));
    }
  });
}

GroundTruth load_ground_truth(const std::filesystem::path& path, double percentile) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open ground truth " + path.string());
  GroundTruth gt;
  gt.percentile = percentile;
  std::int32_t count = 0;
  while (io::try_read_le(in, count, "ground truth header")) {
    if (count <= 0) throw DataError("invalid ground truth record size");
    auto& set = gt.per_query.emplace_back(std::size_t(count));
    for (auto& idx : set) {
      const auto v = io::read_le<std::int32_t>(in, "ground truth index");
      if (v < 0) throw DataError("negative ground truth index");
      idx = static_cast<std::uint32_t>(v);
    }
  }
  if (gt.per_query.empty()) throw DataError("ground truth file has no records");
  return gt;
}

double average_precision(const Ranking& ranking, std::span<const std::uint32_t> truth) {
  const auto mask = truth_mask(truth, ranking.order.size());
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t rank = 0; rank < ranking.order.size(); ++rank) {
    if (mask[ranking.order[rank]]) {
      ++hits;
      sum += double(hits) / double(rank + 1);
    }
  }
  return sum / double(truth.size());
}

double mean_average_precision(std::span<const Ranking> rankings,
                              std::span<const std::vector<std::uint32_t>> truths) {
  if (rankings.size() != truths.size()) {
    throw std::invalid_argument("one truth set per ranking required");
  }
  std::vector<double> ap(rankings.size());
  for (std::size_t q = 0; q < rankings.size(); ++q) {
    ap[q] = average_precision(rankings[q], truths[q]);
  }
  return mean_average_precision(ap);
}

double mean_average_precision(std::span<const double> per_query_ap) {
  if (per_query_ap.empty()) throw std::invalid_argument("MAP over zero queries");
  return std::accumulate(per_query_ap.begin(), per_query_ap.end(), 0.0) /
         double(per_query_ap.size());
}

PRCurve pr_curve(const Ranking& ranking, std::span<const std::uint32_t> truth) {
  const auto mask = truth_mask(truth, ranking.order.size());
  PRCurve curve;
  curve.points.reserve(ranking.order.size());
  std::size_t hits = 0;
  for (std::size_t rank = 0; rank < ranking.order.size(); ++rank) {
    if (mask[ranking.order[rank]]) ++hits;
    curve.points.push_back({double(hits) / double(truth.size()),
                            double(hits) / double(rank + 1)});
  }
  return curve;
}

std::vector<double> recall_levels() {
  std::vector<double> levels(21);
  for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = double(i) / 20.0;
  return levels;
}

std::vector<PRPoint> pr_at_recall_levels(const PRCurve& curve) {
  // Knots: the points where recall steps up, preceded by (0, first precision).
  std::vector<PRPoint> knots;
  double last_recall = 0.0;
  for (const auto& p : curve.points) {
    if (p.recall > last_recall) {
      if (knots.empty()) knots.push_back({0.0, p.precision});
      knots.push_back(p);
      last_recall = p.recall;
    }
  }
  if (knots.empty()) throw std::invalid_argument("curve never reaches a true neighbour");

  std::vector<PRPoint> out;
  for (double level : recall_levels()) {
    auto it = std::lower_bound(knots.begin(), knots.end(), level,
                               [](const PRPoint& k, double r) { return k.recall < r; });
    double precision = 0.0;
    if (it == knots.end()) {
      precision = 0.0;  // ranking was truncated before full recall
    } else if (it == knots.begin() || it->recall == level) {
      precision = it->precision;
    } else {
      const auto& lo = *(it - 1);
      const double frac = (level - lo.recall) / (it->recall - lo.recall);
      precision = lo.precision + frac * (it->precision - lo.precision);
    }
    out.push_back({level, precision});
  }
  return out;
}

std::vector<PRPoint> average_pr_curves(std::span<const std::vector<PRPoint>> curves) {
  if (curves.empty()) throw std::invalid_argument("no curves to average");
  std::vector<PRPoint> mean = curves.front();
  for (auto& p : mean) p.precision = 0.0;
  for (const auto& c : curves) {
    if (c.size() != mean.size()) throw std::invalid_argument("curves sampled at different levels");
    for (std::size_t i = 0; i < c.size(); ++i) mean[i].precision += c[i].precision;
  }
  for (auto& p : mean) p.precision /= double(curves.size());
  return mean;
}

}  // namespace dshash
