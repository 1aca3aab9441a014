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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>

#include "dshash/errors.hpp"

namespace dshash::io {

template <class T>
  requires std::is_arithmetic_v<T>
void write_le(std::ostream& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  out.write(bytes, sizeof(T));
}

/// Reads one little-endian value; returns false on clean EOF before the first
/// byte and throws DataError on a partial read.
template <class T>
  requires std::is_arithmetic_v<T>
bool try_read_le(std::istream& in, T& value, const char* what) {
  char bytes[sizeof(T)];
  in.read(bytes, sizeof(T));
  const auto got = in.gcount();
  if (got == 0) return false;
  if (got != static_cast<std::streamsize>(sizeof(T))) {
    throw DataError(std::string("truncated ") + what);
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  std::memcpy(&value, bytes, sizeof(T));
  return true;
}

template <class T>
T read_le(std::istream& in, const char* what) {
  T value{};
  if (!try_read_le(in, value, what)) {
    throw DataError(std::string("unexpected end of file reading ") + what);
  }
  return value;
}

/// Writes via a temporary sibling file and renames it into place, so the
/// destination is either complete or untouched.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer);

}  // namespace dshash::io
