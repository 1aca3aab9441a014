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
#include <limits>
#include <sstream>

#include "dshash/errors.hpp"
#include "dshash/quantizer.hpp"
#include "test_util.hpp"

using namespace dshash;
using namespace dshash::testing;

namespace {

// Naive SSE: recompute each group mean from scratch, then sum squared
// distances with a plain double loop.
double naive_sse(const Dataset& ds, const std::vector<std::uint32_t>& assignment,
                 std::size_t k) {
  double total = 0.0;
  for (std::size_t g = 0; g < k; ++g) {
    std::vector<double> mean(ds.dim(), 0.0);
    std::size_t m = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (assignment[i] != g) continue;
      for (std::size_t j = 0; j < ds.dim(); ++j) mean[j] += ds.row(i)[j];
      ++m;
    }
    if (m == 0) continue;
    for (auto& v : mean) v /= double(m);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (assignment[i] != g) continue;
      for (std::size_t j = 0; j < ds.dim(); ++j) {
        const double diff = ds.row(i)[j] - mean[j];
        total += diff * diff;
      }
    }
  }
  return total;
}

// Exhaustive minimum SSE over all partitions into two non-empty groups.
double brute_force_two_means(const Dataset& ds) {
  const std::size_t n = ds.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::uint32_t> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1u;
    best = std::min(best, naive_sse(ds, a, 2));
  }
  return best;
}

void check_center_is_mean(const Dataset& ds, const Quantization& q) {
  for (std::size_t g = 0; g < q.k; ++g) {
    std::vector<double> mean(ds.dim(), 0.0);
    std::size_t m = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (q.assignment[i] != g) continue;
      for (std::size_t j = 0; j < ds.dim(); ++j) mean[j] += ds.row(i)[j];
      ++m;
    }
    REQUIRE(m == q.group_sizes[g]);
    for (std::size_t j = 0; j < ds.dim(); ++j) {
      CHECK(std::abs(mean[j] / double(m) - q.centers.row(g)[j]) <= 1e-5);
    }
  }
}

}  // namespace

TEST_CASE("two separated 1-D points split for any seed") {
  // k < n forbids {0, 10} with k = 2 directly; each point is doubled instead.
  const Dataset ds(2, 1, {0.0f, 10.0f});
  const Dataset four(4, 1, {0.0f, 10.0f, 0.0f, 10.0f});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (auto init : {KMeansInit::kForgy, KMeansInit::kPlusPlus}) {
      const auto q = kmeans(four, 2, 5, seed, init);
      std::vector<double> c{q.centers.row(0)[0], q.centers.row(1)[0]};
      std::sort(c.begin(), c.end());
      if (init == KMeansInit::kPlusPlus) {
        CHECK(c[0] == 0.0);
        CHECK(c[1] == 10.0);
        CHECK(q.sse == 0.0);
      }
      CHECK(q.group_sizes[0] + q.group_sizes[1] == 4);
      CHECK(q.group_sizes[0] >= 1);
      CHECK(q.group_sizes[1] >= 1);
    }
  }
  CHECK_THROWS_AS(kmeans(ds, 2, 5, 0), TrainingError);
}

TEST_CASE("four-point instance reaches the brute-force optimum") {
  const Dataset ds(4, 2, {0, 0, 0, 2, 10, 0, 10, 2});
  const double optimum = brute_force_two_means(ds);
  CHECK(optimum == doctest::Approx(4.0));
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    hits += kmeans(ds, 2, 5, seed).sse == doctest::Approx(optimum) ? 1 : 0;
  }
  MESSAGE("optimal in " << hits << "/100 seeds");
  CHECK(hits >= 95);
  const auto q = kmeans(ds, 2, 5, 1);
  CHECK(q.sse == doctest::Approx(optimum));
  std::vector<std::pair<double, double>> centers{
      {q.centers.row(0)[0], q.centers.row(0)[1]}, {q.centers.row(1)[0], q.centers.row(1)[1]}};
  std::sort(centers.begin(), centers.end());
  CHECK(centers[0] == std::make_pair(0.0, 1.0));
  CHECK(centers[1] == std::make_pair(10.0, 1.0));
}

TEST_CASE("SSE helper matches a naive recomputation") {
  SUBCASE("zero distortion") {
    const Dataset ds(4, 1, {1, 1, 5, 5});
    const auto q = kmeans(ds, 2, 3, 0);
    CHECK(sse(ds, q) == 0.0);
  }
  SUBCASE("one group hand arithmetic") {
    const Dataset ds(2, 1, {0, 2});
    Quantization q;
    q.k = 1;
    q.centers = Matrix(1, 1);
    q.centers.data = {1.0};
    q.assignment = {0, 0};
    q.group_sizes = {2};
    CHECK(sse(ds, q) == 2.0);
  }
  SUBCASE("random instance") {
    const Dataset ds = random_dataset(100, 5, 17, -3, 3);
    const auto q = kmeans(ds, 6, 4, 2);
    const double expected = naive_sse(ds, q.assignment, q.k);
    CHECK(std::abs(sse(ds, q) - expected) <= 1e-8 * expected);
    CHECK(std::abs(q.sse - expected) <= 1e-8 * expected);
  }
  SUBCASE("dimension mismatch") {
    const Dataset ds = random_dataset(10, 3, 1);
    auto q = kmeans(ds, 2, 2, 0);
    const Dataset other = random_dataset(10, 4, 1);
    CHECK_THROWS_AS(sse(other, q), DataError);
  }
}

TEST_CASE("Lloyd iterations never increase SSE and keep centers at member means") {
  for (std::uint64_t inst = 0; inst < 50; ++inst) {
    const auto mix = generate_gaussian_mixture(
        GaussianMixtureSpec{8, 40, 4, 0.8, 3.0, 1000 + inst});
    for (auto init : {KMeansInit::kForgy, KMeansInit::kPlusPlus}) {
      const auto q = kmeans(mix.data, 12, 10, inst, init);
      REQUIRE(q.sse_trace.size() == std::size_t(q.iterations_run));
      for (std::size_t i = 1; i < q.sse_trace.size(); ++i) {
        CHECK(q.sse_trace[i] <= q.sse_trace[i - 1] * (1.0 + 1e-12));
      }
      std::size_t total = 0;
      for (auto s : q.group_sizes) {
        CHECK(s >= 1);
        total += s;
      }
      CHECK(total == mix.data.size());
      check_center_is_mean(mix.data, q);
    }
  }
}

TEST_CASE("iterations are capped and early stop is recorded") {
  const auto mix = generate_gaussian_mixture(GaussianMixtureSpec{5, 200, 3, 1.5, 2.0, 9});
  const auto capped = kmeans(mix.data, 20, 2, 3);
  CHECK(capped.iterations_run == 2);
  const auto tight = Dataset(6, 1, {0, 0.1f, 0.2f, 10, 10.1f, 10.2f});
  const auto converged = kmeans(tight, 2, 50, 0);
  CHECK(converged.iterations_run < 50);
}

TEST_CASE("empty groups are repaired") {
  // Three identical points and one outlier: Forgy often picks two identical
  // seeds, leaving the higher-index group empty after the tie-broken
  // assignment. Repair must hand it the outlier.
  const Dataset ds(4, 1, {0, 0, 0, 10});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto q = kmeans(ds, 2, 3, seed, KMeansInit::kForgy);
    CHECK(q.group_sizes[0] >= 1);
    CHECK(q.group_sizes[1] >= 1);
    CHECK(q.sse == 0.0);
  }
}

TEST_CASE("kmeans is deterministic and validates arguments") {
  const Dataset ds = random_dataset(300, 6, 8);
  const auto a = kmeans(ds, 10, 3, 99);
  const auto b = kmeans(ds, 10, 3, 99);
  CHECK(a.centers == b.centers);
  CHECK(a.assignment == b.assignment);
  CHECK(a.sse_trace == b.sse_trace);
  CHECK_THROWS_AS(kmeans(ds, 0, 3, 0), TrainingError);
  CHECK_THROWS_AS(kmeans(ds, 300, 3, 0), TrainingError);
  CHECK_THROWS_AS(kmeans(ds, 5, 0, 0), TrainingError);
}

TEST_CASE("group_count_for") {
  CHECK(group_count_for(64, 1.5) == 96);
  CHECK(group_count_for(2, 1.0) == 2);
  CHECK(group_count_for(1, 0.5) == 2);
  CHECK(group_count_for(32, 1.5) == 48);
  CHECK_THROWS_AS(group_count_for(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(group_count_for(4, 0.0), std::invalid_argument);
}

TEST_CASE("SSE trace CSV") {
  const Dataset ds = random_dataset(50, 2, 4);
  const auto q = kmeans(ds, 3, 4, 1);
  std::ostringstream out;
  write_sse_trace_csv(q, out);
  const std::string text = out.str();
  CHECK(text.rfind("iteration,sse\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == q.iterations_run + 1);
}
