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
#include <iosfwd>
#include <vector>

#include "dshash/dataset.hpp"
#include "dshash/eval.hpp"
#include "dshash/hash_model.hpp"

namespace dshash {

struct BenchmarkOptions {
  std::vector<Method> methods{Method::kDsh, Method::kLsh, Method::kPcah};
  std::vector<std::size_t> bits{16, 32, 64};
  double alpha = 1.5;
  int iterations = 3;
  std::size_t radius = 3;
  std::uint64_t seed = 0;
};

/// Trains one method on the (raw) database. PCAH and DSH center internally.
HashModel train_method(Method method, const Dataset& database, std::size_t bits,
                       const BenchmarkOptions& options);

struct Evaluation {
  double map = 0.0;
  std::vector<double> average_precisions;
  std::vector<PRPoint> pr;  // averaged at recall_levels()
  double test_seconds_per_query = 0.0;
};

/// Encodes the database, then per query: encode + rank (timed), AP and PR.
Evaluation evaluate_model(const HashModel& model, const Dataset& database,
                          const Dataset& queries, const GroundTruth& truth);

struct ReportRow {
  Method method = Method::kDsh;
  std::size_t bits = 0;
  double map = 0.0;
  double train_seconds = 0.0;
  double test_seconds_per_query = 0.0;
  std::vector<PRPoint> pr;
};

struct BenchmarkReport {
  std::vector<ReportRow> rows;

  /// method,L,map,train_seconds,test_seconds_per_query
  void write_csv(std::ostream& out) const;
  /// method,L,recall,precision
  void write_pr_csv(std::ostream& out) const;
  void print_table(std::ostream& out) const;
};

/// One row per (method, L), methods outermost, in the order given.
BenchmarkReport benchmark(const Dataset& database, const Dataset& queries,
                          const GroundTruth& truth, const BenchmarkOptions& options);

}  // namespace dshash
