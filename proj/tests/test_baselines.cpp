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


#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dshash/baselines.hpp"
#include "dshash/codes.hpp"
#include "dshash/errors.hpp"
#include "test_util.hpp"

using namespace dshash;
using namespace dshash::testing;

TEST_CASE("train_lsh construction and determinism") {
  const auto m = train_lsh(3, 4, 42);
  CHECK(m.method == Method::kLsh);
  REQUIRE(m.bits() == 4);
  for (const auto& p : m.projections) {
    CHECK(p.w.size() == 3);
    CHECK(p.t == 0.0);
    for (double v : p.w) CHECK(std::isfinite(v));
  }
  CHECK(m.training_mean == std::vector<double>(3, 0.0));
  CHECK(train_lsh(3, 4, 42).projections == m.projections);
  CHECK_FALSE(train_lsh(3, 4, 43).projections == m.projections);
}

TEST_CASE("LSH projection components are standard normal") {
  const auto m = train_lsh(100, 1000, 7);
  double sum = 0.0, sq = 0.0;
  std::size_t n = 0;
  for (const auto& p : m.projections) {
    for (double v : p.w) {
      sum += v;
      sq += v * v;
      ++n;
    }
  }
  const double mean = sum / double(n);
  const double sd = std::sqrt(sq / double(n) - mean * mean);
  CHECK(std::abs(mean) <= 0.02);
  CHECK(sd >= 0.98);
  CHECK(sd <= 1.02);
}

TEST_CASE("train_lsh on a dataset records its mean") {
  const Dataset ds(2, 2, {1, 1, 3, 3});
  CHECK(train_lsh(ds, 4, 0).training_mean == std::vector<double>{2, 2});
  CHECK(train_lsh(center(ds), 4, 0).training_mean == std::vector<double>{2, 2});
}

TEST_CASE("collision rate follows 1 - angle / pi") {
  const std::vector<double> x{1.0, 0.0};
  CHECK(lsh_collision_rate(x, x, 1000, 1) == 1.0);
  const std::vector<double> y{0.0, 3.0};
  CHECK(std::abs(lsh_collision_rate(x, y, 100000, 2) - 0.5) <= 0.01);
  const double a = std::numbers::pi / 3;
  const std::vector<double> z{std::cos(a), std::sin(a)};
  CHECK(std::abs(lsh_collision_rate(x, z, 100000, 3) - 2.0 / 3.0) <= 0.01);

  const std::vector<double> zero{0.0, 0.0};
  CHECK_THROWS_AS(lsh_collision_rate(x, zero, 10, 0), std::invalid_argument);
}

TEST_CASE("collision rate within 3 standard errors for random pairs") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  const std::size_t trials = 20000;
  for (int pair = 0; pair < 10; ++pair) {
    std::vector<double> a(5), b(5);
    for (auto& v : a) v = g(rng);
    for (auto& v : b) v = g(rng);
    double dot = 0, na = 0, nb = 0;
    for (int j = 0; j < 5; ++j) {
      dot += a[j] * b[j];
      na += a[j] * a[j];
      nb += b[j] * b[j];
    }
    const double expected = 1.0 - std::acos(dot / std::sqrt(na * nb)) / std::numbers::pi;
    const double se = std::sqrt(expected * (1 - expected) / double(trials));
    CHECK(std::abs(lsh_collision_rate(a, b, trials, 100 + pair) - expected) <= 3 * se + 1e-12);
  }
}

TEST_CASE("PCAH on a line recovers the line direction") {
  std::vector<float> v;
  for (int i = -10; i <= 10; ++i) {
    v.push_back(float(i));
    v.push_back(float(i));
  }
  const Dataset ds = center(Dataset(21, 2, v));
  const auto m = train_pcah(ds, 1);
  CHECK(m.method == Method::kPcah);
  CHECK(m.projections[0].w[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(m.projections[0].w[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(m.projections[0].t == 0.0);
}

TEST_CASE("PCAH on isotropic data") {
  std::mt19937_64 rng(1);
  std::normal_distribution<float> g;
  std::vector<float> v(10000 * 2);
  for (auto& x : v) x = g(rng);
  const Dataset ds = center(Dataset(10000, 2, v));
  const auto spectrum = covariance_spectrum(ds);
  CHECK(spectrum[0] >= 0.9);
  CHECK(spectrum[0] <= 1.1);
  CHECK(spectrum[1] >= 0.9);
  CHECK(spectrum[1] <= 1.1);
  const auto m = train_pcah(ds, 2);
  const auto& a = m.projections[0].w;
  const auto& b = m.projections[1].w;
  CHECK(std::abs(a[0] * b[0] + a[1] * b[1]) <= 1e-6);
}

TEST_CASE("PCAH projections: orthonormal, sign-fixed, variance ordered") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  const std::size_t n = 3000, d = 6;
  const double scale[d] = {5, 1, 3, 0.5, 2, 0.2};
  std::vector<float> v(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) v[i * d + j] = float(g(rng) * scale[j] + 0.3 * g(rng));
  }
  const Dataset ds = center(Dataset(n, d, v));
  const auto m = train_pcah(ds, 6);
  std::vector<double> variance;
  for (std::size_t l = 0; l < 6; ++l) {
    const auto& w = m.projections[l].w;
    double norm = 0.0;
    for (double x : w) norm += x * x;
    CHECK(norm == doctest::Approx(1.0));
    for (double x : w) {
      if (std::abs(x) > 1e-12) {
        CHECK(x > 0.0);
        break;
      }
    }
    for (std::size_t o = 0; o < l; ++o) {
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) dot += w[j] * m.projections[o].w[j];
      CHECK(std::abs(dot) <= 1e-6);
    }
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double p = 0.0;
      for (std::size_t j = 0; j < d; ++j) p += w[j] * ds.row(i)[j];
      var += p * p;
    }
    variance.push_back(var);
  }
  for (std::size_t l = 1; l < variance.size(); ++l) CHECK(variance[l] <= variance[l - 1]);
}

TEST_CASE("PCAH preconditions") {
  const Dataset raw = random_dataset(20, 3, 1);
  CHECK_THROWS_AS(train_pcah(raw, 2), TrainingError);
  CHECK_THROWS_AS(train_pcah(center(raw), 4), TrainingError);
}
