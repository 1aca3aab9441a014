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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dshash {

enum class Method : std::uint32_t {
  kDsh = 1,
  kLsh = 2,
  kPcah = 3,
};

std::string_view method_name(Method m);
/// Case-insensitive "dsh" / "lsh" / "pcah".
Method parse_method(std::string_view name);

/// One hash function: bit = 1 iff w.x >= t.
struct Projection {
  std::vector<double> w;
  double t = 0.0;

  bool operator==(const Projection&) const = default;
};

struct DshParams {
  std::size_t bits = 32;
  double alpha = 1.5;
  int iterations = 3;
  std::size_t radius = 3;
  std::uint64_t seed = 0;

  bool operator==(const DshParams&) const = default;
};

/// Everything needed to encode a raw vector: subtract training_mean, then one
/// bit per projection.
struct HashModel {
  Method method = Method::kDsh;
  std::vector<double> training_mean;
  std::vector<Projection> projections;
  /// Only set for DSH models that came out of a trainer; not persisted.
  std::optional<DshParams> params;

  std::size_t bits() const { return projections.size(); }
  std::size_t dim() const { return training_mean.size(); }

  /// Throws DataError if projections are ragged or empty.
  void validate() const;
};

/// Binary layout, little-endian:
///   "DSH1" | u32 method | u32 L | u32 d | d x f64 mean | L x (d x f64 w, f64 t)
void write_model(const HashModel& model, std::ostream& out);
HashModel read_model(std::istream& in);
void save_model(const HashModel& model, const std::filesystem::path& path);
/// Rejects bad magic, and a dimension other than expected_dim when given.
HashModel load_model(const std::filesystem::path& path,
                     std::optional<std::size_t> expected_dim = std::nullopt);

template <class T>
bool hash_bit(std::span<const double> w, double t, std::span<const T> x) {
  double dot = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) dot += w[j] * double(x[j]);
  return dot >= t;
}

}  // namespace dshash
