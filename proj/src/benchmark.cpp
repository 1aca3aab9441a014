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


#include "dshash/benchmark.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <string>

#include "dshash/baselines.hpp"
#include "dshash/codes.hpp"
#include "dshash/dsh.hpp"
#include "dshash/errors.hpp"

namespace dshash {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

}  // namespace

HashModel train_method(Method method, const Dataset& database, std::size_t bits,
                       const BenchmarkOptions& options) {
  switch (method) {
    case Method::kDsh: {
      DshParams params;
      params.bits = bits;
      params.alpha = options.alpha;
      params.iterations = options.iterations;
      params.radius = options.radius;
      params.seed = options.seed;
      return train_dsh(database, params);
    }
    case Method::kLsh:
      return train_lsh(database, bits, options.seed);
    case Method::kPcah:
      return train_pcah(database.centered() ? database : center(database), bits);
  }
  throw TrainingError("unknown method");
}

Evaluation evaluate_model(const HashModel& model, const Dataset& database,
                          const Dataset& queries, const GroundTruth& truth) {
  if (truth.per_query.size() != queries.size()) {
    throw DataError("ground truth has " + std::to_string(truth.per_query.size()) +
                    " queries, expected " + std::to_string(queries.size()));
  }
  const CodeStore store = encode(model, database);
  Evaluation ev;
  ev.average_precisions.resize(queries.size());
  std::vector<std::vector<PRPoint>> curves(queries.size());
  std::vector<double> raw(queries.dim());
  std::vector<double> scratch;
  std::vector<std::uint64_t> code(words_for_bits(model.bits()));
  double total_seconds = 0.0;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    queries.copy_raw_row(q, raw);
    const auto start = Clock::now();
    encode_point(model, raw, code, scratch);
    const Ranking ranking = rank_all(store, code, q);
    total_seconds += seconds_since(start);
    ev.average_precisions[q] = average_precision(ranking, truth.per_query[q]);
    curves[q] = pr_at_recall_levels(pr_curve(ranking, truth.per_query[q]));
  }
  ev.map = mean_average_precision(ev.average_precisions);
  ev.pr = average_pr_curves(curves);
  ev.test_seconds_per_query = total_seconds / double(queries.size());
  return ev;
}

BenchmarkReport benchmark(const Dataset& database, const Dataset& queries,
                          const GroundTruth& truth, const BenchmarkOptions& options) {
  BenchmarkReport report;
  for (Method method : options.methods) {
    for (std::size_t bits : options.bits) {
      const auto start = Clock::now();
      const HashModel model = train_method(method, database, bits, options);
      const double train_seconds = seconds_since(start);
      const Evaluation ev = evaluate_model(model, database, queries, truth);
      report.rows.push_back({method, bits, ev.map, train_seconds,
                             ev.test_seconds_per_query, ev.pr});
    }
  }
  return report;
}

void BenchmarkReport::write_csv(std::ostream& out) const {
  out << "method,L,map,train_seconds,test_seconds_per_query\n";
  for (const auto& r : rows) {
    out << method_name(r.method) << ',' << r.bits << ',' << fmt("%.8f", r.map) << ','
        << fmt("%.6e", r.train_seconds) << ',' << fmt("%.6e", r.test_seconds_per_query)
        << '\n';
  }
}

void BenchmarkReport::write_pr_csv(std::ostream& out) const {
  out << "method,L,recall,precision\n";
  for (const auto& r : rows) {
    for (const auto& p : r.pr) {
      out << method_name(r.method) << ',' << r.bits << ',' << fmt("%.2f", p.recall) << ','
          << fmt("%.8f", p.precision) << '\n';
    }
  }
}

void BenchmarkReport::print_table(std::ostream& out) const {
  char line[160];
  std::snprintf(line, sizeof(line), "%-6s %5s %10s %14s %16s\n", "method", "L", "MAP",
                "train (s)", "test (s/query)");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%-6s %5zu %10.4f %14.4f %16.3e\n",
                  std::string(method_name(r.method)).c_str(), r.bits, r.map,
                  r.train_seconds, r.test_seconds_per_query);
    out << line;
  }
}

}  // namespace dshash
