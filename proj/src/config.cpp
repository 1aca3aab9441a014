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


#include "dshash/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <stdexcept>

namespace dshash {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("invalid value '" + value + "' for " + key);
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) {
    throw std::invalid_argument("invalid value '" + value + "' for " + key);
  }
  return out;
}

}  // namespace

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto piece = trim(value.substr(start, comma == std::string::npos
                                                    ? std::string::npos
                                                    : comma - start));
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Settings parse_settings(std::istream& in) {
  Settings settings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": unterminated section header");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const auto key = normalize_key(trim(line.substr(0, eq)));
    if (key.empty()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": empty key");
    }
    settings[key] = trim(line.substr(eq + 1));
  }
  return settings;
}

Settings load_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path.string());
  return parse_settings(in);
}

void ExperimentConfig::apply(const Settings& settings) {
  for (const auto& [raw_key, value] : settings) {
    const auto key = normalize_key(raw_key);
    if (key == "input") {
      input = value;
    } else if (key == "clusters") {
      mixture.num_clusters = parse_number<std::size_t>(key, value);
    } else if (key == "points-per-cluster") {
      mixture.points_per_cluster = parse_number<std::size_t>(key, value);
    } else if (key == "dim") {
      mixture.dim = parse_number<std::size_t>(key, value);
    } else if (key == "cluster-std") {
      mixture.cluster_std = parse_real(key, value);
    } else if (key == "half-width") {
      mixture.center_box_half_width = parse_real(key, value);
    } else if (key == "queries") {
      queries = parse_number<std::size_t>(key, value);
    } else if (key == "method") {
      bench.methods.clear();
      for (const auto& m : split_list(value)) bench.methods.push_back(parse_method(m));
    } else if (key == "bits") {
      bench.bits.clear();
      for (const auto& b : split_list(value)) {
        bench.bits.push_back(parse_number<std::size_t>(key, b));
      }
    } else if (key == "alpha") {
      bench.alpha = parse_real(key, value);
    } else if (key == "iters") {
      bench.iterations = parse_number<int>(key, value);
    } else if (key == "radius") {
      bench.radius = parse_number<std::size_t>(key, value);
    } else if (key == "seed") {
      bench.seed = parse_number<std::uint64_t>(key, value);
      mixture.seed = bench.seed;
    } else if (key == "percentile") {
      percentile = parse_real(key, value);
    } else if (key == "out") {
      out = value;
    } else if (key == "threads") {
      threads = parse_number<unsigned>(key, value);
    } else {
      throw std::invalid_argument("unknown setting '" + raw_key + "'");
    }
  }
}

void ExperimentConfig::validate_training() const {
  if (!input) mixture.validate();
  if (bench.methods.empty()) throw std::invalid_argument("no methods requested");
  if (bench.bits.empty()) throw std::invalid_argument("no code lengths requested");
  for (auto b : bench.bits) {
    if (b < 1) throw std::invalid_argument("code length must be >= 1");
  }
  if (!(bench.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (bench.iterations < 1) throw std::invalid_argument("iters must be >= 1");
  if (bench.radius < 1) throw std::invalid_argument("radius must be >= 1");
}

void ExperimentConfig::validate(std::optional<std::size_t> n) const {
  validate_training();
  if (!(percentile > 0.0 && percentile < 1.0)) {
    throw std::invalid_argument("percentile must be in (0, 1)");
  }
  if (queries < 1) throw std::invalid_argument("queries must be >= 1");
  const std::size_t size =
      n ? *n : (input ? 0 : mixture.num_clusters * mixture.points_per_cluster);
  if (size != 0 && queries >= size) {
    throw std::invalid_argument("queries (" + std::to_string(queries) +
                                ") must be smaller than the dataset (" +
                                std::to_string(size) + ")");
  }
}

}  // namespace dshash
