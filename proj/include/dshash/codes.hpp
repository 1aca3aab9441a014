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
#include <span>
#include <vector>

#include "dshash/dataset.hpp"
#include "dshash/hash_model.hpp"

namespace dshash {

inline constexpr std::size_t words_for_bits(std::size_t bits) { return (bits + 63) / 64; }

/// n codes of L bits, each packed into ceil(L/64) little-endian-ordered 64-bit
/// words: bit b lives in word b/64 at position b%64. Unused high bits are 0.
class CodeStore {
 public:
  CodeStore() = default;
  CodeStore(std::size_t n, std::size_t bits);
  /// Throws DataError on a size mismatch or nonzero padding bits.
  CodeStore(std::size_t n, std::size_t bits, std::vector<std::uint64_t> words);

  std::size_t size() const { return n_; }
  std::size_t bits() const { return bits_; }
  std::size_t words_per_code() const { return words_per_code_; }
  std::span<const std::uint64_t> words() const { return words_; }

  std::span<const std::uint64_t> code(std::size_t i) const {
    return {words_.data() + i * words_per_code_, words_per_code_};
  }
  std::span<std::uint64_t> mutable_code(std::size_t i) {
    return {words_.data() + i * words_per_code_, words_per_code_};
  }
  bool bit(std::size_t i, std::size_t b) const {
    return (code(i)[b / 64] >> (b % 64)) & 1u;
  }

  bool operator==(const CodeStore&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t bits_ = 0;
  std::size_t words_per_code_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Encodes one vector given in original (uncentered) coordinates.
std::vector<std::uint64_t> encode_point(const HashModel& model,
                                        std::span<const float> raw);
void encode_point(const HashModel& model, std::span<const double> raw,
                  std::span<std::uint64_t> out, std::vector<double>& scratch);

/// Encodes every row; centered datasets are mapped back to raw coordinates
/// before the model's training mean is subtracted.
CodeStore encode(const HashModel& model, const Dataset& ds);

std::size_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Database indices sorted by (Hamming distance, index).
struct Ranking {
  std::size_t query_index = 0;
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> distances;
};

Ranking rank_all(const CodeStore& store, std::span<const std::uint64_t> query,
                 std::size_t query_index = 0);

/// Layout, little-endian: "DSHC" | u64 n | u32 L | n * ceil(L/64) x u64.
void write_codes(const CodeStore& store, std::ostream& out);
CodeStore read_codes(std::istream& in);
void save_codes(const CodeStore& store, const std::filesystem::path& path);
CodeStore load_codes(const std::filesystem::path& path);
inline constexpr std::size_t kCodesHeaderBytes = 16;

}  // namespace dshash
