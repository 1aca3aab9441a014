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


#include "dshash/codes.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <string>

#include "dshash/binary_io.hpp"
#include "dshash/errors.hpp"
#include "dshash/parallel.hpp"

namespace dshash {
namespace {
constexpr char kMagic[4] = {'D', 'S', 'H', 'C'};

std::uint64_t padding_mask(std::size_t bits) {
  const std::size_t used = bits % 64;
  return used == 0 ? 0 : ~((std::uint64_t{1} << used) - 1);
}
}  // namespace

CodeStore::CodeStore(std::size_t n, std::size_t bits)
    : n_(n), bits_(bits), words_per_code_(words_for_bits(bits)),
      words_(n * words_for_bits(bits), 0) {
  if (bits == 0) throw DataError("code length must be >= 1");
}

CodeStore::CodeStore(std::size_t n, std::size_t bits, std::vector<std::uint64_t> words)
    : n_(n), bits_(bits), words_per_code_(words_for_bits(bits)), words_(std::move(words)) {
  if (bits == 0) throw DataError("code length must be >= 1");
  if (words_.size() != n_ * words_per_code_) {
    throw DataError("code store holds " + std::to_string(words_.size()) +
                    " words, expected " + std::to_string(n_ * words_per_code_));
  }
  const std::uint64_t mask = padding_mask(bits);
  if (mask != 0) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (code(i).back() & mask) throw DataError("nonzero padding bits in code store");
    }
  }
}

void encode_point(const HashModel& model, std::span<const double> raw,
                  std::span<std::uint64_t> out, std::vector<double>& scratch) {
  const std::size_t d = model.dim();
  scratch.resize(d);
  for (std::size_t j = 0; j < d; ++j) scratch[j] = raw[j] - model.training_mean[j];
  std::fill(out.begin(), out.end(), 0);
  const std::span<const double> x(scratch);
  for (std::size_t l = 0; l < model.projections.size(); ++l) {
    const auto& p = model.projections[l];
    if (hash_bit(std::span<const double>(p.w), p.t, x)) {
      out[l / 64] |= std::uint64_t{1} << (l % 64);
    }
  }
}

std::vector<std::uint64_t> encode_point(const HashModel& model,
                                        std::span<const float> raw) {
  if (raw.size() != model.dim()) {
    throw DataError("vector dimension " + std::to_string(raw.size()) +
                    " does not match model dimension " + std::to_string(model.dim()));
  }
  std::vector<double> x(raw.begin(), raw.end());
  std::vector<double> scratch;
  std::vector<std::uint64_t> out(words_for_bits(model.bits()));
  encode_point(model, x, out, scratch);
  return out;
}

CodeStore encode(const HashModel& model, const Dataset& ds) {
  model.validate();
  if (ds.dim() != model.dim()) {
    throw DataError("dataset dimension " + std::to_string(ds.dim()) +
                    " does not match model dimension " + std::to_string(model.dim()));
  }
  CodeStore store(ds.size(), model.bits());
  const std::size_t d = ds.dim();
  const std::size_t bits = model.bits();
  std::vector<double> weights(bits * d);
  std::vector<double> thresholds(bits);
  for (std::size_t l = 0; l < bits; ++l) {
    std::copy(model.projections[l].w.begin(), model.projections[l].w.end(),
              weights.begin() + l * d);
    thresholds[l] = model.projections[l].t;
  }
  constexpr std::size_t kBlock = 8;
  const std::size_t chunk = 1024;
  const std::size_t chunks = (ds.size() + chunk - 1) / chunk;
  parallel_for(0, chunks, [&](std::size_t c) {
    std::vector<double> raw(d);
    std::vector<double> x(kBlock * d);
    const std::size_t end = std::min(ds.size(), (c + 1) * chunk);
    for (std::size_t first = c * chunk; first < end; first += kBlock) {
      const std::size_t count = std::min(kBlock, end - first);
      for (std::size_t b = 0; b < count; ++b) {
        ds.copy_raw_row(first + b, raw);
        for (std::size_t j = 0; j < d; ++j) x[b * d + j] = raw[j] - model.training_mean[j];
      }
      for (std::size_t l = 0; l < bits; ++l) {
        const double* w = weights.data() + l * d;
        double dot[kBlock] = {};
        // Same summation order as hash_bit, interleaved across the block.
        for (std::size_t j = 0; j < d; ++j) {
          for (std::size_t b = 0; b < kBlock; ++b) dot[b] += w[j] * x[b * d + j];
        }
        for (std::size_t b = 0; b < count; ++b) {
          if (dot[b] >= thresholds[l]) {
            store.mutable_code(first + b)[l / 64] |= std::uint64_t{1} << (l % 64);
          }
        }
      }
    }
  }, 1);
  return store;
}

std::size_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw DataError("hamming: code length mismatch");
  std::size_t dist = 0;
  for (std::size_t w = 0; w < a.size(); ++w) dist += std::popcount(a[w] ^ b[w]);
  return dist;
}

Ranking rank_all(const CodeStore& store, std::span<const std::uint64_t> query,
                 std::size_t query_index) {
  if (query.size() != store.words_per_code()) {
    throw DataError("rank_all: query code length mismatch");
  }
  const std::size_t n = store.size();
  const std::size_t wpc = store.words_per_code();
  const auto words = store.words();
  std::vector<std::uint32_t> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t* c = words.data() + i * wpc;
    std::uint32_t d = 0;
    for (std::size_t w = 0; w < wpc; ++w) d += std::popcount(c[w] ^ query[w]);
    dist[i] = d;
  }
  // Counting sort over the L+1 possible distances keeps index order within a
  // bucket, which is exactly the (distance, index) order.
  std::vector<std::size_t> start(store.bits() + 2, 0);
  for (auto d : dist) ++start[d + 1];
  for (std::size_t b = 1; b < start.size(); ++b) start[b] += start[b - 1];
  Ranking r;
  r.query_index = query_index;
  r.order.resize(n);
  r.distances.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t slot = start[dist[i]]++;
    r.order[slot] = static_cast<std::uint32_t>(i);
    r.distances[slot] = dist[i];
  }
  return r;
}

void write_codes(const CodeStore& store, std::ostream& out) {
  out.write(kMagic, sizeof(kMagic));
  io::write_le(out, static_cast<std::uint64_t>(store.size()));
  io::write_le(out, static_cast<std::uint32_t>(store.bits()));
  for (auto w : store.words()) io::write_le(out, w);
}

CodeStore read_codes(std::istream& in) {
  char magic[4] = {};
  in.read(magic, sizeof(magic));
  if (in.gcount() != 4 || !std::equal(magic, magic + 4, kMagic)) {
    throw DataError("not a code file (bad magic)");
  }
  const auto n = io::read_le<std::uint64_t>(in, "code count");
  const auto bits = io::read_le<std::uint32_t>(in, "code length");
  if (bits == 0) throw DataError("invalid code length 0");
  const std::size_t total = std::size_t(n) * words_for_bits(bits);
  std::vector<std::uint64_t> words;
  words.reserve(std::min<std::size_t>(total, std::size_t{1} << 24));
  for (std::size_t i = 0; i < total; ++i) words.push_back(io::read_le<std::uint64_t>(in, "code words"));
  if (in.peek() != std::char_traits<char>::eof()) {
    throw DataError("trailing bytes after code payload");
  }
  return CodeStore(std::size_t(n), bits, std::move(words));
}

void save_codes(const CodeStore& store, const std::filesystem::path& path) {
  io::write_file_atomically(path, [&](std::ostream& out) { write_codes(store, out); });
}

CodeStore load_codes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open code file " + path.string());
  return read_codes(in);
}

}  // namespace dshash
