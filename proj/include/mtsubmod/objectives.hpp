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

// Monotone submodular set functions over {0,1}^n.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "mtsubmod/core.hpp"
#include "mtsubmod/graph.hpp"

namespace mtsubmod {

// Value tracker for single-bit toggles, used by exhaustive enumeration.
class IncrementalEvaluator {
 public:
  virtual ~IncrementalEvaluator() = default;
  virtual double toggle(std::size_t j) = 0;
  virtual double value() const = 0;
};

class SubmodularFunction {
 public:
  virtual ~SubmodularFunction() = default;

  virtual std::size_t ground_size() const = 0;
  virtual std::string_view name() const = 0;

  // From-scratch value. Throws ContractViolation on size mismatch.
  virtual double evaluate(const BitString& x) const = 0;

  // Value of x plus an evaluation cache for evaluate_offspring. The default
  // keeps no cache.
  virtual double evaluate_with_state(const BitString& x, std::vector<std::uint64_t>& state) const;

  // Value of `child`, which equals the parent with the positions in `flips`
  // toggled. `parent_state` is the parent's cache; `child_state` receives the
  // child's. Must agree exactly with evaluate(child).
  virtual double evaluate_offspring(const BitString& child, std::span<const std::size_t> flips,
                                    std::span<const std::uint64_t> parent_state,
                                    std::vector<std::uint64_t>& child_state) const;

  // f(X + j) - f(X). Throws ContractViolation if j is already in X.
  virtual double marginal_gain(const BitString& x, std::size_t j) const;

  virtual std::unique_ptr<IncrementalEvaluator> incremental(const BitString& start) const;

 protected:
  void require_size(const BitString& x) const;
};

// Coverage(x) = | union over selected v of N[v] |, N[v] the closed
// neighborhood. Each N[v] is stored as a dense bit mask so evaluation is a
// word-parallel union plus popcount. The evaluation cache is the covered
// mask itself.
class CoverageObjective final : public SubmodularFunction {
 public:
  explicit CoverageObjective(const Graph& g);

  std::size_t ground_size() const override { return n_; }
  std::string_view name() const override { return "coverage"; }

  double evaluate(const BitString& x) const override;
  double evaluate_with_state(const BitString& x, std::vector<std::uint64_t>& state) const override;
  double evaluate_offspring(const BitString& child, std::span<const std::size_t> flips,
                            std::span<const std::uint64_t> parent_state,
                            std::vector<std::uint64_t>& child_state) const override;
  double marginal_gain(const BitString& x, std::size_t j) const override;
  std::unique_ptr<IncrementalEvaluator> incremental(const BitString& start) const override;

  std::span<const std::uint64_t> neighborhood_mask(std::size_t v) const {
    return {masks_.data() + v * words_, words_};
  }
  std::span<const std::uint32_t> closed_neighborhood(std::size_t v) const {
    return closed_[v];
  }
  std::size_t words_per_mask() const { return words_; }

 private:
  void union_into(const BitString& x, std::vector<std::uint64_t>& covered) const;

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> masks_;                // n_ * words_
  std::vector<std::vector<std::uint32_t>> closed_;  // sorted, includes v
};

// f(x) = sum_j values[j] x[j]; modular, hence submodular with equality.
class ModularObjective final : public SubmodularFunction {
 public:
  explicit ModularObjective(std::vector<double> item_values);

  std::size_t ground_size() const override { return values_.size(); }
  std::string_view name() const override { return "modular"; }
  double evaluate(const BitString& x) const override;

 private:
  std::vector<double> values_;
};

}  // namespace mtsubmod
