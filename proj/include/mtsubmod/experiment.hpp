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

#pragma once

// Repeated classical-vs-multitasking GSEMO runs on coverage instances, with
// equal primary-evaluation budgets per repetition, aggregated into one
// comparison row per (graph, bound, checkpoint).
//
// Seed derivation (all through derive_seed, see rng.hpp):
//   weights     (master, graph, regime, rep | fixed-tag, problem, "weights")
//   classical   (master, graph, regime, bounds, rep, problem, "run")
//   multitask   (master, graph, regime, bounds, rep, sentinel, "run")
// where graph is the FNV-1a hash of the graph label and bounds the hash of
// the bound list.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtsubmod/graph.hpp"
#include "mtsubmod/gsemo.hpp"
#include "mtsubmod/stats.hpp"

namespace mtsubmod::experiment {

struct GraphSource {
  std::filesystem::path path;
  std::string label;  // file stem unless given explicitly
};

enum class ModeSelection { kClassical, kMultitasking, kBoth };

struct ExperimentConfig {
  std::vector<GraphSource> graphs;
  GraphFormat format = GraphFormat::kAuto;
  CostRegime regime = CostRegime::kUnit;
  std::vector<std::int64_t> bounds;
  // Per-problem generation counts; the largest is the per-problem budget.
  std::vector<std::uint64_t> checkpoints{100000, 200000, 500000, 1000000};
  std::size_t repetitions = 30;
  std::uint64_t master_seed = 1;
  ModeSelection modes = ModeSelection::kBoth;
  bool resample_weights = true;
  InitMode init = InitMode::kAllZeros;

  // Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

// "key = value" lines, '#' comments. Keys: graph (repeatable, optional
// "label=NAME" suffix), format, regime, bounds, checkpoints, repetitions,
// seed, modes, resample_weights, init. Relative graph paths resolve against
// base_dir. Throws ParseError with the offending line.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir,
                              const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical key = value rendering (parse_config reads it back).
std::string format_config(const ExperimentConfig& cfg);

enum class RunMode { kClassical, kMultitasking };
std::string_view to_string(RunMode mode);

struct RawRecord {
  std::string graph;
  CostRegime regime = CostRegime::kUnit;
  RunMode mode = RunMode::kClassical;
  std::size_t repetition = 0;
  std::size_t problem = 0;
  std::int64_t bound = 0;          // nominal bound, before any scaling
  std::uint64_t generations = 0;   // per-problem generations
  std::optional<double> best_f;    // empty when nothing is feasible
  std::optional<std::int64_t> cost;  // scaled cost of the best point
  std::size_t archive_size = 0;

  friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

struct ResultRow {
  std::string graph;
  CostRegime regime = CostRegime::kUnit;
  std::size_t problem = 0;
  std::int64_t bound = 0;
  std::uint64_t generations = 0;
  std::optional<double> mean_c, std_c, mean_m, std_m, h, p;
  stats::Verdict verdict = stats::Verdict::kInsufficientData;
};

struct ExperimentResult {
  std::vector<RawRecord> raw;
  std::vector<ResultRow> rows;
};

struct HarnessOptions {
  std::size_t workers = 1;
  // Called as jobs finish: (finished, total).
  std::function<void(std::size_t, std::size_t)> progress;
};

std::uint64_t weight_seed(const ExperimentConfig& cfg, const std::string& graph_label,
                          std::size_t repetition, std::size_t problem);
std::uint64_t run_seed(const ExperimentConfig& cfg, const std::string& graph_label,
                       std::size_t repetition, std::optional<std::size_t> problem);

// Constraint of problem `problem` in repetition `repetition`.
Constraint problem_constraint(const ExperimentConfig& cfg, const Graph& g,
                              const std::string& graph_label, std::size_t repetition,
                              std::size_t problem);

// Runs every repetition of every graph. Raw records and rows come out in
// canonical order (graph label, problem, generations, mode, repetition)
// regardless of worker scheduling. Any failing job aborts the experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const HarnessOptions& options = {});

// Same as run_experiment for one already-parsed graph.
std::vector<RawRecord> run_graph(const ExperimentConfig& cfg, const Graph& g,
                                 const std::string& label, const HarnessOptions& options = {});

// Groups raw records by (graph, regime, problem, generations) and compares
// classical against multitasking samples.
std::vector<ResultRow> aggregate(std::span<const RawRecord> raw);

void write_raw_csv(std::ostream& out, std::span<const RawRecord> raw);
std::vector<RawRecord> read_raw_csv(std::istream& in, const std::string& source = "<raw>");
void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);
void write_meta(std::ostream& out, const ExperimentConfig& cfg);

// results.csv, raw_runs.csv and meta.txt under `dir` (created if missing).
void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                   const ExperimentResult& result);

}  // namespace mtsubmod::experiment
