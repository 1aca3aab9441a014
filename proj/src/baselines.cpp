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


#include "dshash/baselines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "dshash/errors.hpp"

namespace dshash {
namespace {

Eigen::MatrixXd sample_covariance(const Dataset& ds) {
  constexpr std::size_t kBlock = 2048;
  const std::size_t n = ds.size();
  const auto d = Eigen::Index(ds.dim());
  const auto mean = ds.column_means();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXd block(Eigen::Index(kBlock), d);
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t rows = std::min(kBlock, n - start);
    for (std::size_t i = 0; i < rows; ++i) {
      const auto r = ds.row(start + i);
      for (Eigen::Index j = 0; j < d; ++j) {
        block(Eigen::Index(i), j) = double(r[std::size_t(j)]) - mean[std::size_t(j)];
      }
    }
    const auto used = block.topRows(Eigen::Index(rows));
    cov.noalias() += used.transpose() * used;
  }
  cov /= double(n > 1 ? n - 1 : 1);
  return cov;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensolve(const Dataset& ds) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sample_covariance(ds));
  if (solver.info() != Eigen::Success) {
    throw TrainingError("covariance eigendecomposition failed");
  }
  return solver;
}

}  // namespace

HashModel train_lsh(std::size_t dim, std::size_t bits, std::uint64_t seed) {
  if (dim < 1 || bits < 1) throw TrainingError("LSH needs d >= 1 and L >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  HashModel model;
  model.method = Method::kLsh;
  model.training_mean.assign(dim, 0.0);
  model.projections.resize(bits);
  for (auto& p : model.projections) {
    p.w.resize(dim);
    for (double& v : p.w) v = gauss(rng);
    p.t = 0.0;
  }
  return model;
}

HashModel train_lsh(const Dataset& ds, std::size_t bits, std::uint64_t seed) {
  HashModel model = train_lsh(ds.dim(), bits, seed);
  model.training_mean = ds.centered() ? *ds.mean() : ds.column_means();
  return model;
}

double lsh_collision_rate(std::span<const double> x1, std::span<const double> x2,
                          std::size_t num_projections, std::uint64_t seed) {
  if (x1.size() != x2.size() || x1.empty()) {
    throw std::invalid_argument("collision rate needs equal nonzero dimensions");
  }
  auto is_zero = [](std::span<const double> x) {
    for (double v : x) {
      if (v != 0.0) return false;
    }
    return true;
  };
  if (is_zero(x1) || is_zero(x2)) throw std::invalid_argument("zero vector");
  if (num_projections == 0) throw std::invalid_argument("need at least one projection");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> w(x1.size());
  std::size_t same = 0;
  for (std::size_t p = 0; p < num_projections; ++p) {
    for (double& v : w) v = gauss(rng);
    if (hash_bit(std::span<const double>(w), 0.0, x1) ==
        hash_bit(std::span<const double>(w), 0.0, x2)) {
      ++same;
    }
  }
  return double(same) / double(num_projections);
}

HashModel train_pcah(const Dataset& ds, std::size_t bits) {
  if (!ds.centered()) throw TrainingError("PCAH requires a centered dataset");
  if (bits < 1 || bits > ds.dim()) {
    throw TrainingError("PCAH needs 1 <= L <= d (L=" + std::to_string(bits) +
                        ", d=" + std::to_string(ds.dim()) + ")");
  }
  const auto solver = eigensolve(ds);
  const auto& vectors = solver.eigenvectors();  // ascending eigenvalues
  const Eigen::Index d = vectors.rows();

  HashModel model;
  model.method = Method::kPcah;
  model.training_mean = *ds.mean();
  model.projections.resize(bits);
  for (std::size_t l = 0; l < bits; ++l) {
    Eigen::VectorXd v = vectors.col(d - 1 - Eigen::Index(l));
    v.normalize();
    for (Eigen::Index j = 0; j < d; ++j) {
      if (std::abs(v[j]) > 1e-12) {
        if (v[j] < 0.0) v = -v;
        break;
      }
    }
    model.projections[l].w.assign(v.data(), v.data() + d);
    model.projections[l].t = 0.0;
  }
  return model;
}

std::vector<double> covariance_spectrum(const Dataset& ds) {
  const auto solver = eigensolve(ds);
  const auto& values = solver.eigenvalues();
  std::vector<double> out(std::size_t(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    out[std::size_t(i)] = values[values.size() - 1 - i];
  }
  return out;
}

}  // namespace dshash
