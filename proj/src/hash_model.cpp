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


#include "dshash/hash_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "dshash/binary_io.hpp"
#include "dshash/errors.hpp"

namespace dshash {
namespace {
constexpr char kMagic[4] = {'D', 'S', 'H', '1'};
constexpr std::uint32_t kMaxDim = 100000;
constexpr std::uint32_t kMaxBits = 1u << 20;
}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kDsh:
      return "DSH";
    case Method::kLsh:
      return "LSH";
    case Method::kPcah:
      return "PCAH";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "dsh") return Method::kDsh;
  if (lower == "lsh") return Method::kLsh;
  if (lower == "pcah") return Method::kPcah;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected dsh, lsh or pcah)");
}

void HashModel::validate() const {
  if (training_mean.empty()) throw DataError("model has zero dimension");
  if (projections.empty()) throw DataError("model has no projections");
  for (const auto& p : projections) {
    if (p.w.size() != training_mean.size()) {
      throw DataError("model projection dimension does not match its mean");
    }
  }
}

void write_model(const HashModel& model, std::ostream& out) {
  model.validate();
  out.write(kMagic, sizeof(kMagic));
  io::write_le(out, static_cast<std::uint32_t>(model.method));
  io::write_le(out, static_cast<std::uint32_t>(model.bits()));
  io::write_le(out, static_cast<std::uint32_t>(model.dim()));
  for (double m : model.training_mean) io::write_le(out, m);
  for (const auto& p : model.projections) {
    for (double v : p.w) io::write_le(out, v);
    io::write_le(out, p.t);
  }
}

HashModel read_model(std::istream& in) {
  char magic[4] = {};
  in.read(magic, sizeof(magic));
  if (in.gcount() != 4 || !std::equal(magic, magic + 4, kMagic)) {
    throw DataError("not a model file (bad magic)");
  }
  HashModel model;
  const auto tag = io::read_le<std::uint32_t>(in, "model method");
  if (tag < 1 || tag > 3) throw DataError("unknown model method tag " + std::to_string(tag));
  model.method = static_cast<Method>(tag);
  const auto bits = io::read_le<std::uint32_t>(in, "model code length");
  const auto dim = io::read_le<std::uint32_t>(in, "model dimension");
  if (bits == 0 || bits > kMaxBits) throw DataError("invalid model code length");
  if (dim == 0 || dim > kMaxDim) throw DataError("invalid model dimension");
  model.training_mean.resize(dim);
  for (double& m : model.training_mean) m = io::read_le<double>(in, "model mean");
  model.projections.resize(bits);
  for (auto& p : model.projections) {
    p.w.resize(dim);
    for (double& v : p.w) v = io::read_le<double>(in, "model projection");
    p.t = io::read_le<double>(in, "model intercept");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw DataError("trailing bytes after model payload");
  }
  return model;
}

void save_model(const HashModel& model, const std::filesystem::path& path) {
  model.validate();
  io::write_file_atomically(path, [&](std::ostream& out) { write_model(model, out); });
}

HashModel load_model(const std::filesystem::path& path,
                     std::optional<std::size_t> expected_dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model " + path.string());
  HashModel model = read_model(in);
  if (expected_dim && model.dim() != *expected_dim) {
    throw DataError("model dimension " + std::to_string(model.dim()) +
                    " does not match expected " + std::to_string(*expected_dim));
  }
  return model;
}

}  // namespace dshash
