// Copyright 2026 The mt-submod Authors.
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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mtsubmod/bitops.hpp"
#include "mtsubmod/experiment.hpp"
#include "mtsubmod/graph.hpp"
#include "mtsubmod/gsemo.hpp"
#include "mtsubmod/objectives.hpp"
#include "mtsubmod/oracles.hpp"
#include "mtsubmod/rng.hpp"

namespace {

using namespace mtsubmod;

// Breadth-first sample of up to `limit` vertices starting at `start`,
// continuing from the lowest unvisited vertex when a component runs out.
std::vector<std::uint32_t> bfs_sample(const Graph& g, std::size_t start, std::size_t limit) {
  const std::size_t n = g.vertex_count();
  limit = std::min(limit, n);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> out;
  std::deque<std::uint32_t> queue;
  std::size_t next_root = 0;
  auto push = [&](std::uint32_t v) {
    if (seen[v] || out.size() >= limit) return;
    seen[v] = 1;
    out.push_back(v);
    queue.push_back(v);
  };
  push(static_cast<std::uint32_t>(start));
  while (out.size() < limit) {
    if (queue.empty()) {
      while (seen[next_root]) ++next_root;
      push(static_cast<std::uint32_t>(next_root));
    }
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t u : g.neighbors(v)) push(u);
  }
  return out;
}

struct Report {
  int failures = 0;
  void line(bool ok, const std::string& what) {
    std::printf("%s  %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok) ++failures;
  }
};

int cmd_verify(const std::string& path, const std::string& format, std::size_t sample_size,
               std::size_t small_size, std::size_t trials, std::uint64_t seed) {
  const Graph full = parse_graph(path, parse_graph_format(format));
  std::printf("graph %s: %zu vertices, %zu edges\n", path.c_str(), full.vertex_count(),
              full.edge_count());
  if (full.vertex_count() == 0) {
    std::printf("FAIL  empty graph\n");
    return 1;
  }
  Xoshiro256 rng(seed);
  Report report;

  const Graph sub = full.induced(bfs_sample(full, rng.below(full.vertex_count()), sample_size));
  const CoverageObjective f(sub);
  std::printf("induced sample: %zu vertices, %zu edges\n", sub.vertex_count(), sub.edge_count());

  const auto props = oracles::check_submodular_monotone(f, trials, rng());
  report.line(props.passed(), "monotone submodular over " + std::to_string(props.trials) +
                                  " trials (" + std::to_string(props.submodularity_checks) +
                                  " diminishing-returns checks)");
  if (!props.passed()) std::printf("      %s\n", props.violations.front().describe().c_str());

  // Offspring evaluation from a cached parent must equal evaluation from scratch.
  std::size_t mismatches = 0;
  std::vector<std::size_t> flips;
  for (std::size_t t = 0; t < trials; ++t) {
    BitString parent(sub.vertex_count());
    const double density = rng.uniform01() * 0.2;
    for (std::size_t j = 0; j < parent.size(); ++j) {
      if (rng.bernoulli(density)) parent.set(j);
    }
    std::vector<std::uint64_t> parent_state, child_state;
    f.evaluate_with_state(parent, parent_state);
    sample_flip_positions(parent.size(), rng, flips);
    BitString child = parent;
    for (std::size_t j : flips) child.flip(j);
    if (f.evaluate_offspring(child, flips, parent_state, child_state) != f.evaluate(child)) {
      ++mismatches;
    }
    const std::size_t j = rng.below(parent.size());
    if (!parent.test(j)) {
      BitString plus = parent;
      plus.set(j);
      if (f.marginal_gain(parent, j) != f.evaluate(plus) - f.evaluate(parent)) ++mismatches;
    }
  }
  report.line(mismatches == 0, "incremental evaluation matches scratch (" +
                                   std::to_string(mismatches) + " mismatches)");

  const auto& scalar = bitops::scalar_kernels();
  const auto& active = bitops::active_kernels();
  std::size_t kernel_mismatches = 0;
  for (std::size_t v = 0; v + 1 < sub.vertex_count(); ++v) {
    const auto a = f.neighborhood_mask(v);
    const auto b = f.neighborhood_mask(v + 1);
    if (scalar.andnot_popcount(a.data(), b.data(), a.size()) !=
        active.andnot_popcount(a.data(), b.data(), a.size())) {
      ++kernel_mismatches;
    }
  }
  report.line(kernel_mismatches == 0,
              std::string("bit kernels '") + std::string(active.name) + "' agree with scalar");

  // Exhaustive check on a smaller connected sample.
  const Graph tiny = full.induced(bfs_sample(full, rng.below(full.vertex_count()), small_size));
  auto tiny_f = std::make_shared<const CoverageObjective>(tiny);
  const std::size_t n = tiny.vertex_count();
  std::vector<Constraint> constraints;
  for (std::int64_t b : {std::int64_t{1}, std::int64_t{2}, std::int64_t{4}}) {
    constraints.push_back(Constraint::unit(n, b));
  }
  const double ratio = 1.0 - 1.0 / std::numbers::e;
  bool greedy_ok = true;
  for (const Constraint& c : constraints) {
    const double opt = oracles::brute_force_opt(*tiny_f, c).value;
    greedy_ok = greedy_ok && tiny_f->evaluate(oracles::greedy(*tiny_f, c)) >= ratio * opt;
  }
  report.line(greedy_ok, "greedy reaches (1-1/e) of the exhaustive optimum on n = " +
                             std::to_string(n));

  ProblemSet ps(tiny_f, constraints, ProblemMode::kMultitasking);
  const std::size_t u = population_bound(ps.constraints(), n);
  RunConfig rc;
  rc.budget = static_cast<std::uint64_t>(
      std::ceil(20.0 * std::numbers::e * static_cast<double>(n * u * u)));
  rc.seed = rng();
  const RunResult result = run(ps, rc);
  bool gsemo_ok = true;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const double opt = oracles::brute_force_opt(*tiny_f, constraints[i]).value;
    const auto best = extract_best(result.population, ps, i);
    gsemo_ok = gsemo_ok && best && best->f >= ratio * opt;
  }
  report.line(gsemo_ok, "multitasking GSEMO reaches (1-1/e) of the optimum for bounds 1, 2, 4");

  std::printf("%s\n", report.failures == 0 ? "verify: all checks passed" : "verify: FAILED");
  return report.failures == 0 ? 0 : 1;
}

int cmd_run(const std::string& config_path, std::size_t workers, const std::string& out_dir) {
  const auto cfg = experiment::load_config(config_path);
  experiment::HarnessOptions opts;
  opts.workers = workers;
  opts.progress = [](std::size_t done, std::size_t total) {
    std::fprintf(stderr, "\r%zu/%zu runs", done, total);
    if (done == total) std::fprintf(stderr, "\n");
  };
  const auto result = experiment::run_experiment(cfg, opts);
  experiment::write_outputs(out_dir, cfg, result);
  std::printf("wrote %s/{results.csv,raw_runs.csv,meta.txt}\n", out_dir.c_str());
  return 0;
}

int cmd_stats(const std::string& raw_path, const std::string& out_path) {
  std::ifstream in(raw_path);
  if (!in) throw std::runtime_error("cannot open " + raw_path);
  const auto raw = experiment::read_raw_csv(in, raw_path);
  const auto rows = experiment::aggregate(raw);
  if (out_path.empty()) {
    experiment::write_results_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    experiment::write_results_csv(out, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical and multitasking GSEMO for submodular coverage problems"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment config");
  std::string config_path;
  std::size_t workers = 1;
  std::string out_dir = "out";
  run->add_option("--config", config_path, "Experiment config file")->required()->check(
      CLI::ExistingFile);
  run->add_option("--workers", workers, "Concurrent runs")->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Output directory");

  auto* verify = app.add_subcommand("verify", "Oracle and property checks on a graph sample");
  std::string graph_path;
  std::string format = "auto";
  std::size_t sample_size = 500;
  std::size_t small_size = 14;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  verify->add_option("--graph", graph_path, "Graph file")->required()->check(CLI::ExistingFile);
  verify->add_option("--format", format, "auto, edge-list or matrix-market");
  verify->add_option("--sample", sample_size, "Vertices in the induced sample");
  verify->add_option("--exhaustive", small_size, "Vertices in the brute-forced sample")
      ->check(CLI::Range(std::size_t{1}, oracles::kMaxEnumerationSize));
  verify->add_option("--trials", trials, "Property-check trials")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Sampling seed");

  auto* stats = app.add_subcommand("stats", "Re-aggregate raw_runs.csv into results rows");
  std::string raw_path;
  std::string stats_out;
  stats->add_option("--raw", raw_path, "raw_runs.csv")->required()->check(CLI::ExistingFile);
  stats->add_option("--out", stats_out, "results.csv path (default: stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config_path, workers, out_dir);
    if (*verify) return cmd_verify(graph_path, format, sample_size, small_size, trials, seed);
    if (*stats) return cmd_stats(raw_path, stats_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mt-submod: %s\n", e.what());
    return 2;
  }
  return 0;
}
