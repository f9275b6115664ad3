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

#include "mtsubmod/objectives.hpp"

#include <algorithm>

namespace mtsubmod {

void SubmodularFunction::require_size(const BitString& x) const {
  if (x.size() != ground_size()) {
    throw ContractViolation("objective: bit string size does not match ground set");
  }
}

double SubmodularFunction::evaluate_with_state(const BitString& x,
                                               std::vector<std::uint64_t>& state) const {
  state.clear();
  return evaluate(x);
}

double SubmodularFunction::evaluate_offspring(const BitString& child,
                                              std::span<const std::size_t> /*flips*/,
                                              std::span<const std::uint64_t> /*parent_state*/,
                                              std::vector<std::uint64_t>& child_state) const {
  return evaluate_with_state(child, child_state);
}

double SubmodularFunction::marginal_gain(const BitString& x, std::size_t j) const {
  require_size(x);
  if (j >= x.size() || x.test(j)) throw ContractViolation("marginal_gain: item already selected");
  BitString y = x;
  y.set(j);
  return evaluate(y) - evaluate(x);
}

namespace {

class RecomputingEvaluator final : public IncrementalEvaluator {
 public:
  RecomputingEvaluator(const SubmodularFunction& f, BitString start)
      : f_(f), x_(std::move(start)), value_(f_.evaluate(x_)) {}

  double toggle(std::size_t j) override {
    x_.flip(j);
    value_ = f_.evaluate(x_);
    return value_;
  }
  double value() const override { return value_; }

 private:
  const SubmodularFunction& f_;
  BitString x_;
  double value_;
};

class CoverageCounter final : public IncrementalEvaluator {
 public:
  CoverageCounter(const CoverageObjective& f, const BitString& start)
      : f_(f), selected_(start), counts_(f.ground_size(), 0) {
    for (std::size_t v : start.ones()) add(v);
  }

  double toggle(std::size_t j) override {
    if (selected_.test(j)) {
      for (std::uint32_t u : f_.closed_neighborhood(j)) {
        if (--counts_[u] == 0) --covered_;
      }
    } else {
      add(j);
    }
    selected_.flip(j);
    return value();
  }
  double value() const override { return static_cast<double>(covered_); }

 private:
  void add(std::size_t v) {
    for (std::uint32_t u : f_.closed_neighborhood(v)) {
      if (counts_[u]++ == 0) ++covered_;
    }
  }

  const CoverageObjective& f_;
  BitString selected_;
  std::vector<std::uint32_t> counts_;
  std::size_t covered_ = 0;
};

bool intersects(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & b[i]) != 0) return true;
  }
  return false;
}

}  // namespace

std::unique_ptr<IncrementalEvaluator> SubmodularFunction::incremental(const BitString& start) const {
  require_size(start);
  return std::make_unique<RecomputingEvaluator>(*this, start);
}

CoverageObjective::CoverageObjective(const Graph& g)
    : n_(g.vertex_count()), words_(bitops::words_for_bits(n_)), masks_(n_ * words_, 0), closed_(n_) {
  for (std::size_t v = 0; v < n_; ++v) {
    auto& list = closed_[v];
    const auto nb = g.neighbors(v);
    list.assign(nb.begin(), nb.end());
    list.insert(std::lower_bound(list.begin(), list.end(), static_cast<std::uint32_t>(v)),
                static_cast<std::uint32_t>(v));
    std::uint64_t* mask = masks_.data() + v * words_;
    for (std::uint32_t u : list) mask[u >> 6] |= std::uint64_t{1} << (u & 63);
  }
}

void CoverageObjective::union_into(const BitString& x, std::vector<std::uint64_t>& covered) const {
  covered.assign(words_, 0);
  const auto& k = bitops::active_kernels();
  for (std::size_t v : x.ones()) k.or_into(covered.data(), masks_.data() + v * words_, words_);
}

double CoverageObjective::evaluate(const BitString& x) const {
  std::vector<std::uint64_t> covered;
  return evaluate_with_state(x, covered);
}

double CoverageObjective::evaluate_with_state(const BitString& x,
                                              std::vector<std::uint64_t>& state) const {
  require_size(x);
  union_into(x, state);
  return static_cast<double>(bitops::active_kernels().popcount(state.data(), words_));
}

double CoverageObjective::evaluate_offspring(const BitString& child,
                                             std::span<const std::size_t> flips,
                                             std::span<const std::uint64_t> parent_state,
                                             std::vector<std::uint64_t>& child_state) const {
  require_size(child);
  if (parent_state.size() != words_) return evaluate_with_state(child, child_state);
  child_state.assign(parent_state.begin(), parent_state.end());
  // A vertex u is covered iff N[u] meets the selection (closed neighborhoods
  // are symmetric), so only N[j] of each removed j needs rechecking.
  for (std::size_t j : flips) {
    if (child.test(j)) continue;
    for (std::uint32_t u : closed_[j]) {
      const std::uint64_t bit = std::uint64_t{1} << (u & 63);
      if (intersects(neighborhood_mask(u), child.words())) {
        child_state[u >> 6] |= bit;
      } else {
        child_state[u >> 6] &= ~bit;
      }
    }
  }
  const auto& k = bitops::active_kernels();
  for (std::size_t j : flips) {
    if (child.test(j)) k.or_into(child_state.data(), masks_.data() + j * words_, words_);
  }
  return static_cast<double>(k.popcount(child_state.data(), words_));
}

double CoverageObjective::marginal_gain(const BitString& x, std::size_t j) const {
  require_size(x);
  if (j >= n_ || x.test(j)) throw ContractViolation("marginal_gain: item already selected");
  std::vector<std::uint64_t> covered;
  union_into(x, covered);
  return static_cast<double>(
      bitops::active_kernels().andnot_popcount(masks_.data() + j * words_, covered.data(), words_));
}

std::unique_ptr<IncrementalEvaluator> CoverageObjective::incremental(const BitString& start) const {
  require_size(start);
  return std::make_unique<CoverageCounter>(*this, start);
}

ModularObjective::ModularObjective(std::vector<double> item_values) : values_(std::move(item_values)) {
  if (std::any_of(values_.begin(), values_.end(), [](double v) { return !(v >= 0.0); })) {
    throw ContractViolation("ModularObjective: item values must be nonnegative");
  }
}

double ModularObjective::evaluate(const BitString& x) const {
  require_size(x);
  double total = 0.0;
  for (std::size_t j : x.ones()) total += values_[j];
  return total;
}

}  // namespace mtsubmod
