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

// GSEMO over a shared submodular objective and k linear cost constraints,
// in the classical single-problem formulation or the multitasking one.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mtsubmod/core.hpp"
#include "mtsubmod/objectives.hpp"
#include "mtsubmod/rng.hpp"

namespace mtsubmod {

enum class ProblemMode { kClassicalSingle, kMultitasking };

// One objective shared by k (weights, bound) problems.
class ProblemSet {
 public:
  ProblemSet(std::shared_ptr<const SubmodularFunction> objective,
             std::vector<Constraint> constraints, ProblemMode mode);

  const SubmodularFunction& objective() const { return *objective_; }
  const std::shared_ptr<const SubmodularFunction>& objective_handle() const { return objective_; }
  std::span<const Constraint> constraints() const { return constraints_; }
  const Constraint& constraint(std::size_t i) const { return constraints_.at(i); }
  std::size_t problem_count() const { return constraints_.size(); }
  std::size_t ground_size() const { return objective_->ground_size(); }
  ProblemMode mode() const { return mode_; }
  bool all_uniform() const;

 private:
  std::shared_ptr<const SubmodularFunction> objective_;
  std::vector<Constraint> constraints_;
  ProblemMode mode_;
};

// Primary value for infeasible points.
inline constexpr double kInfeasiblePrimary = -1.0;

// (f(x) if c(x) <= B else -1, -c(x)). Requires classical-single mode.
ObjectiveVector fitness_classical(const ProblemSet& ps, const BitString& x);

// (f(x) if some c_i(x) <= B_i else -1, -c_1(x), ..., -c_k(x)). f is evaluated
// at most once. Requires multitasking mode.
ObjectiveVector fitness_multitask(const ProblemSet& ps, const BitString& x);

// Dispatches on ps.mode().
ObjectiveVector fitness(const ProblemSet& ps, const BitString& x);

enum class InitMode { kRandomUniform, kAllZeros };

struct RunConfig {
  InitMode init = InitMode::kAllZeros;
  // Offspring evaluations; each iteration produces exactly one.
  std::uint64_t budget = 0;
  // Iteration counts at which the trace is sampled; 0 is the initial archive.
  std::vector<std::uint64_t> checkpoints;
  std::uint64_t seed = 0;
};

struct ProblemBest {
  double f = 0.0;
  std::int64_t cost = 0;
  friend bool operator==(const ProblemBest&, const ProblemBest&) = default;
};

struct CheckpointRecord {
  std::uint64_t iteration = 0;
  std::size_t archive_size = 0;
  // One entry per problem; empty when no archive member is feasible for it.
  std::vector<std::optional<ProblemBest>> best;

  friend bool operator==(const CheckpointRecord&, const CheckpointRecord&) = default;
};

struct RunTrace {
  std::vector<CheckpointRecord> records;
  friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

// The archive outgrew the uniform-constraint size bound.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RunOptions {
  // Throw InvariantViolation whenever |P| exceeds population_bound. Only
  // checked when every constraint is uniform.
  bool check_population_bound = true;
  // Called after every iteration with (iterations done, archive).
  std::function<void(std::uint64_t, const Population&)> observer;
};

struct RunResult {
  Population population;
  RunTrace trace;
  std::uint64_t evaluations = 0;  // excludes the initial point
};

RunResult run(const ProblemSet& ps, const RunConfig& cfg, const RunOptions& options = {});

struct BestSolution {
  BitString x;
  double f = 0.0;
  std::int64_t cost = 0;
};

// Member with the largest f among those feasible for problem `problem`
// (0-based). Ties go to lower cost, then fewer ones, then the
// lexicographically smaller bit string.
std::optional<BestSolution> extract_best(const Population& p, const ProblemSet& ps,
                                         std::size_t problem);

// Flip positions for standard bit mutation with rate 1/n, in increasing
// order. Uses geometric gaps, which is distributed identically to n
// independent coin flips.
void sample_flip_positions(std::size_t n, Xoshiro256& rng, std::vector<std::size_t>& out);

}  // namespace mtsubmod
