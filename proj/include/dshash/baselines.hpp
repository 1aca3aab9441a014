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
#include <span>
#include <vector>

#include "dshash/dataset.hpp"
#include "dshash/hash_model.hpp"

namespace dshash {

/// Random-hyperplane LSH: w ~ N(0, I), t = 0. The model's mean is zero, so it
/// expects already-centered inputs.
HashModel train_lsh(std::size_t dim, std::size_t bits, std::uint64_t seed);

/// Same projections, with the dataset's mean recorded for encoding raw data.
HashModel train_lsh(const Dataset& ds, std::size_t bits, std::uint64_t seed);

/// Fraction of `num_projections` random hyperplanes through the origin that
/// put x1 and x2 on the same side.
double lsh_collision_rate(std::span<const double> x1, std::span<const double> x2,
                          std::size_t num_projections, std::uint64_t seed);

/// PCA hashing: the top-L covariance eigenvectors (unit length, first nonzero
/// component positive) with t = 0. Requires a centered dataset.
HashModel train_pcah(const Dataset& ds, std::size_t bits);

/// Eigenvalues of the sample covariance in descending order.
std::vector<double> covariance_spectrum(const Dataset& ds);

}  // namespace dshash
