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


// dshash: train, encode and benchmark binary hash codes for nearest-neighbour
// search.
//
//   dshash gen   --clusters 50 --points-per-cluster 200 --dim 64 --out data.fvecs
//   dshash train --input data.fvecs --method dsh --bits 32 --out model.bin
//   dshash encode --model model.bin --input data.fvecs --out codes.bin
//   dshash groundtruth --input base.fvecs --query-file q.fvecs --out truth.ivecs
//   dshash query --model model.bin --codes codes.bin --query-file q.fvecs --topk 10
//   dshash bench --config experiment.cfg --out results/
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 training error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dshash/baselines.hpp"
#include "dshash/benchmark.hpp"
#include "dshash/binary_io.hpp"
#include "dshash/codes.hpp"
#include "dshash/config.hpp"
#include "dshash/dataset.hpp"
#include "dshash/dsh.hpp"
#include "dshash/errors.hpp"
#include "dshash/eval.hpp"
#include "dshash/parallel.hpp"

namespace fs = std::filesystem;
using namespace dshash;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kDataError = 2, kTrainingError = 3 };

/// String-valued flags collected into Settings so that config files and
/// flags share one parser; only flags actually given override the file.
class SettingFlags {
 public:
  void add(CLI::App* app, const std::string& name, const std::string& help) {
    auto& slot = values_[name];
    options_.emplace_back(name, app->add_option("--" + name, slot, help));
  }

  Settings given() const {
    Settings s;
    for (const auto& [name, opt] : options_) {
      if (opt->count() > 0) s[name] = values_.at(name);
    }
    return s;
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, CLI::Option*>> options_;
};

void add_mixture_flags(SettingFlags& flags, CLI::App* app) {
  flags.add(app, "clusters", "Gaussian mixture: number of clusters");
  flags.add(app, "points-per-cluster", "Gaussian mixture: points per cluster");
  flags.add(app, "dim", "Gaussian mixture: dimensionality");
  flags.add(app, "cluster-std", "Gaussian mixture: per-coordinate std");
  flags.add(app, "half-width", "Gaussian mixture: half width of the center box");
}

void add_training_flags(SettingFlags& flags, CLI::App* app) {
  flags.add(app, "method", "dsh, lsh or pcah (comma list for bench)");
  flags.add(app, "bits", "code length L (comma list for bench)");
  flags.add(app, "alpha", "DSH group-count factor, k = alpha * L");
  flags.add(app, "iters", "DSH k-means iterations p");
  flags.add(app, "radius", "DSH r for r-adjacent groups");
  flags.add(app, "seed", "random seed");
  flags.add(app, "threads", "worker thread cap (0 = all cores)");
}

ExperimentConfig resolve_config(const std::string& config_path, const SettingFlags& flags) {
  ExperimentConfig cfg;
  if (!config_path.empty()) cfg.apply(load_settings(config_path));
  cfg.apply(flags.given());
  set_max_threads(cfg.threads);
  return cfg;
}

Dataset load_source(const ExperimentConfig& cfg) {
  if (cfg.input) return load_vectors(*cfg.input);
  return generate_gaussian_mixture(cfg.mixture).data;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_text_atomically(const fs::path& path, const std::string& text) {
  io::write_file_atomically(path, [&](std::ostream& out) { out << text; });
}

int run_gen(const ExperimentConfig& cfg, const std::string& out, const std::string& labels) {
  cfg.mixture.validate();
  const auto mix = generate_gaussian_mixture(cfg.mixture);
  write_fvecs(mix.data, out);
  if (!labels.empty()) {
    std::ostringstream text;
    for (auto l : mix.labels) text << l << '\n';
    write_text_atomically(labels, text.str());
  }
  std::cout << "wrote " << mix.data.size() << " x " << mix.data.dim() << " vectors to "
            << out << '\n';
  return kOk;
}

int run_train(const ExperimentConfig& cfg, const std::string& out) {
  cfg.validate_training();
  if (cfg.bench.methods.size() != 1 || cfg.bench.bits.size() != 1) {
    throw std::invalid_argument("train takes exactly one --method and one --bits");
  }
  const Dataset data = load_source(cfg);
  const Method method = cfg.bench.methods.front();
  const std::size_t bits = cfg.bench.bits.front();

  const auto start = std::chrono::steady_clock::now();
  HashModel model;
  if (method == Method::kDsh) {
    DshParams params{bits, cfg.bench.alpha, cfg.bench.iterations, cfg.bench.radius,
                     cfg.bench.seed};
    auto training = train_dsh_detailed(data, params);
    if (training.skipped_degenerate > 0) {
      std::cerr << "warning: skipped " << training.skipped_degenerate
                << " adjacent pairs with coincident centers\n";
    }
    model = std::move(training.model);
  } else {
    model = train_method(method, data, bits, cfg.bench);
  }
  const double seconds = seconds_since(start);
  save_model(model, out);
  std::printf("trained %s L=%zu on %zu x %zu in %.6f s -> %s\n",
              std::string(method_name(method)).c_str(), bits, data.size(), data.dim(),
              seconds, out.c_str());
  return kOk;
}

int run_encode(const std::string& model_path, const std::string& input, const std::string& out) {
  const Dataset data = load_vectors(input);
  const HashModel model = load_model(model_path, data.dim());
  const CodeStore codes = encode(model, data);
  save_codes(codes, out);
  std::cout << "encoded " << codes.size() << " vectors into " << codes.bits()
            << "-bit codes -> " << out << '\n';
  return kOk;
}

int run_groundtruth(const std::string& base, const std::string& query_file,
                    double percentile, const std::string& out) {
  const Dataset database = load_vectors(base);
  const Dataset queries = load_vectors(query_file);
  const GroundTruth truth = ground_truth(database, queries, percentile);
  save_ground_truth(truth, out);
  std::cout << "wrote " << truth.per_query.size() << " truth sets of "
            << truth_size(database.size(), percentile) << " neighbours -> " << out << '\n';
  return kOk;
}

int run_query(const std::string& model_path, const std::string& codes_path,
              const std::string& query_file, std::size_t topk, const std::string& out) {
  const Dataset queries = load_vectors(query_file);
  const HashModel model = load_model(model_path, queries.dim());
  const CodeStore store = load_codes(codes_path);
  if (store.bits() != model.bits()) {
    throw DataError("code file has " + std::to_string(store.bits()) +
                    "-bit codes but the model produces " + std::to_string(model.bits()));
  }
  std::ostringstream text;
  text << "query,rank,index,distance\n";
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto code = encode_point(model, queries.row(q));
    const Ranking ranking = rank_all(store, code, q);
    const std::size_t shown = std::min(topk, ranking.order.size());
    for (std::size_t r = 0; r < shown; ++r) {
      text << q << ',' << (r + 1) << ',' << ranking.order[r] << ','
           << ranking.distances[r] << '\n';
    }
  }
  if (out.empty()) {
    std::cout << text.str();
  } else {
    write_text_atomically(out, text.str());
  }
  return kOk;
}

int run_bench(const ExperimentConfig& cfg) {
  cfg.validate();
  const Dataset data = load_source(cfg);
  cfg.validate(data.size());
  const Split split = random_split(data.size(), cfg.queries, cfg.bench.seed);
  const Dataset database = data.select_rows(split.database_indices);
  const Dataset queries = data.select_rows(split.query_indices);
  const GroundTruth truth = ground_truth(database, queries, cfg.percentile);
  const BenchmarkReport report = benchmark(database, queries, truth, cfg.bench);

  fs::create_directories(cfg.out);
  std::ostringstream csv;
  report.write_csv(csv);
  write_text_atomically(cfg.out / "report.csv", csv.str());
  std::ostringstream pr;
  report.write_pr_csv(pr);
  write_text_atomically(cfg.out / "pr.csv", pr.str());
  report.print_table(std::cout);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary hash codes for approximate nearest-neighbour search"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a Gaussian-mixture dataset");
  SettingFlags gen_flags;
  add_mixture_flags(gen_flags, gen);
  gen_flags.add(gen, "seed", "random seed");
  std::string gen_out;
  std::string gen_labels;
  gen->add_option("--out", gen_out, "output .fvecs path")->required();
  gen->add_option("--labels", gen_labels, "optional text file of cluster labels");

  // train
  auto* train = app.add_subcommand("train", "Train a hash model");
  SettingFlags train_flags;
  std::string train_config;
  std::string train_out;
  train->add_option("--config", train_config, "key = value config file");
  train_flags.add(train, "input", ".fvecs/.bvecs training data (default: mixture)");
  add_mixture_flags(train_flags, train);
  add_training_flags(train_flags, train);
  train->add_option("--out", train_out, "model output path")->required();

  // encode
  auto* enc = app.add_subcommand("encode", "Encode a dataset with a trained model");
  std::string enc_model, enc_input, enc_out;
  unsigned enc_threads = 0;
  enc->add_option("--model", enc_model, "model file")->required();
  enc->add_option("--input", enc_input, ".fvecs/.bvecs data")->required();
  enc->add_option("--out", enc_out, "code file output path")->required();
  enc->add_option("--threads", enc_threads, "worker thread cap (0 = all cores)");

  // groundtruth
  auto* gt = app.add_subcommand("groundtruth", "Exact top-percentile neighbours");
  std::string gt_base, gt_queries, gt_out;
  double gt_percentile = 0.02;
  unsigned gt_threads = 0;
  gt->add_option("--input", gt_base, "database vectors")->required();
  gt->add_option("--query-file", gt_queries, "query vectors")->required();
  gt->add_option("--percentile", gt_percentile, "true-neighbour fraction (default 0.02)");
  gt->add_option("--out", gt_out, "ivecs output path")->required();
  gt->add_option("--threads", gt_threads, "worker thread cap (0 = all cores)");

  // query
  auto* query = app.add_subcommand("query", "Hamming-rank a code file for each query");
  std::string q_model, q_codes, q_queries, q_out;
  std::size_t q_topk = 10;
  query->add_option("--model", q_model, "model file")->required();
  query->add_option("--codes", q_codes, "code file of the database")->required();
  query->add_option("--query-file", q_queries, "query vectors")->required();
  query->add_option("--topk", q_topk, "results per query (default 10)");
  query->add_option("--out", q_out, "CSV output (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Split, train, encode, rank and score");
  SettingFlags bench_flags;
  std::string bench_config;
  bench->add_option("--config", bench_config, "key = value config file");
  bench_flags.add(bench, "input", ".fvecs/.bvecs data (default: mixture)");
  add_mixture_flags(bench_flags, bench);
  add_training_flags(bench_flags, bench);
  bench_flags.add(bench, "queries", "number of held-out queries");
  bench_flags.add(bench, "percentile", "true-neighbour fraction (default 0.02)");
  bench_flags.add(bench, "out", "output directory for report.csv and pr.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return run_gen(resolve_config("", gen_flags), gen_out, gen_labels);
    if (*train) return run_train(resolve_config(train_config, train_flags), train_out);
    if (*enc) {
      set_max_threads(enc_threads);
      return run_encode(enc_model, enc_input, enc_out);
    }
    if (*gt) {
      set_max_threads(gt_threads);
      return run_groundtruth(gt_base, gt_queries, gt_percentile, gt_out);
    }
    if (*query) return run_query(q_model, q_codes, q_queries, q_topk, q_out);
    if (*bench) return run_bench(resolve_config(bench_config, bench_flags));
  } catch (const TrainingError& e) {
    std::cerr << "training error: " << e.what() << '\n';
    return kTrainingError;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}
