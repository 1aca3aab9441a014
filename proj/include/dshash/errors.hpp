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

#include <stdexcept>
#include <string>

namespace dshash {

/// Malformed input data: bad file layout, dimension mismatch, non-finite
/// values, I/O failure.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A trainer could not satisfy its preconditions (group count, radius,
/// code length too large for the candidate pool, ...).
class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dshash
