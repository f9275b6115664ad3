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

// Ground truth for small instances: exhaustive optima, the marginal-gain
// greedy baseline, and a sampling checker for monotonicity and
// submodularity.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mtsubmod/core.hpp"
#include "mtsubmod/objectives.hpp"

namespace mtsubmod::oracles {

// Largest ground set brute_force_opt will enumerate.
inline constexpr std::size_t kMaxEnumerationSize = 24;

struct Optimum {
  double value = 0.0;
  BitString witness;
};

// Exact max of f over {x : c(x) <= bound}, enumerating all 2^n points in
// Gray-code order with incremental evaluation. Among optimal points the
// witness has the fewest ones, then the smallest bit string. Throws
// std::invalid_argument when n exceeds kMaxEnumerationSize.
Optimum brute_force_opt(const SubmodularFunction& f, const Constraint& c);

// OPT_b for b = 0..max_ones: the best value over points with at most b ones.
// Nondecreasing in b; entry 0 is f(0^n).
std::vector<double> cardinality_opt_table(const SubmodularFunction& f, std::size_t max_ones);

// Repeatedly adds the affordable item of largest marginal gain (lowest index
// on ties) until nothing else fits. Uniform constraints only; throws
// BoundNotApplicable for knapsack constraints.
BitString greedy(const SubmodularFunction& f, const Constraint& c);

struct PropertyViolation {
  enum class Kind { kMonotonicity, kSubmodularity } kind;
  BitString smaller;  // A
  BitString larger;   // B, with A a subset of B
  std::size_t item = 0;  // x, not in B (submodularity only)
  double lhs = 0.0;   // f(A) or the gain at A
  double rhs = 0.0;   // f(B) or the gain at B

  std::string describe() const;
};

struct PropertyReport {
  std::size_t trials = 0;
  // Trials that had an item outside B, i.e. ran the submodularity check.
  std::size_t submodularity_checks = 0;
  // Submodularity checks that held with equality (within tolerance).
  std::size_t tight = 0;
  std::vector<PropertyViolation> violations;

  bool passed() const { return violations.empty(); }
};

// Samples chains A subset B subset U and x outside B, and checks
// f(A) <= f(B) and f(A + x) - f(A) >= f(B + x) - f(B).
PropertyReport check_submodular_monotone(const SubmodularFunction& f, std::size_t trials,
                                         std::uint64_t seed);

}  // namespace mtsubmod::oracles
