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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dshash/benchmark.hpp"
#include "dshash/dataset.hpp"

namespace dshash {

/// Flat key -> value settings. Keys use the CLI long-flag spelling
/// ("points-per-cluster"); underscores are accepted and normalized to dashes.
using Settings = std::map<std::string, std::string>;

/// Parses "key = value" lines. '#' and ';' start comments, "[section]"
/// headers only group keys visually. Throws std::invalid_argument with the
/// line number on malformed input.
Settings parse_settings(std::istream& in);
Settings load_settings(const std::filesystem::path& path);

struct ExperimentConfig {
  /// .fvecs / .bvecs file; a Gaussian mixture is generated when absent.
  std::optional<std::filesystem::path> input;
  GaussianMixtureSpec mixture{50, 200, 64, 1.0, 5.0, 0};
  std::size_t queries = 1000;
  BenchmarkOptions bench;
  double percentile = 0.02;
  std::filesystem::path out = ".";
  unsigned threads = 0;

  /// Applies settings on top of the current values; unknown keys and bad
  /// values throw std::invalid_argument. `seed` also seeds the mixture.
  void apply(const Settings& settings);
  /// Checks data-source and training parameters.
  void validate_training() const;
  /// validate_training() plus the split and evaluation settings; n is the
  /// dataset size once known.
  void validate(std::optional<std::size_t> n = std::nullopt) const;
};

std::vector<std::string> split_list(const std::string& value);

}  // namespace dshash
