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

#include "mtsubmod/core.hpp"

#include <algorithm>
#include <bit>

namespace mtsubmod {

BitString BitString::from_indices(std::size_t n, std::span<const std::size_t> ones) {
  BitString x(n);
  for (std::size_t i : ones) {
    if (i >= n) throw ContractViolation("BitString index out of range");
    x.set(i);
  }
  return x;
}

BitString BitString::from_string(std::string_view bits) {
  BitString x(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      x.set(i);
    } else if (bits[i] != '0') {
      throw ContractViolation("BitString literal must contain only '0' and '1'");
    }
  }
  return x;
}

std::size_t BitString::ones_count() const { return bitops::popcount(words_); }

std::vector<std::size_t> BitString::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::string BitString::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kUnit:
      return "unit";
    case ConstraintKind::kUniformWeighted:
      return "uniform-weighted";
    case ConstraintKind::kKnapsack:
      return "knapsack";
  }
  return "?";
}

namespace {

ConstraintKind classify(std::span<const std::int64_t> weights) {
  if (weights.empty()) return ConstraintKind::kUnit;
  const std::int64_t a = weights.front();
  const bool all_equal = std::all_of(weights.begin(), weights.end(),
                                     [a](std::int64_t w) { return w == a; });
  if (!all_equal || a <= 0) return ConstraintKind::kKnapsack;
  return a == 1 ? ConstraintKind::kUnit : ConstraintKind::kUniformWeighted;
}

}  // namespace

Constraint::Constraint(std::vector<std::int64_t> weights, std::int64_t bound)
    : weights_(std::move(weights)), bound_(bound), kind_(classify(weights_)) {
  if (bound_ < 0) throw ContractViolation("constraint bound must be nonnegative");
  if (std::any_of(weights_.begin(), weights_.end(), [](std::int64_t w) { return w < 0; })) {
    throw ContractViolation("constraint weights must be nonnegative");
  }
}

Constraint Constraint::unit(std::size_t n, std::int64_t bound) {
  return Constraint(std::vector<std::int64_t>(n, 1), bound);
}

Constraint Constraint::uniform(std::size_t n, std::int64_t weight, std::int64_t bound) {
  if (weight <= 0) throw ContractViolation("uniform weight must be positive");
  return Constraint(std::vector<std::int64_t>(n, weight), bound);
}

std::int64_t Constraint::cost(const BitString& x) const {
  if (x.size() != weights_.size()) throw ContractViolation("cost: size mismatch");
  if (kind_ != ConstraintKind::kKnapsack) {
    const std::int64_t a = weights_.empty() ? 1 : weights_.front();
    return a * static_cast<std::int64_t>(x.ones_count());
  }
  std::int64_t total = 0;
  for (std::size_t j : x.ones()) total += weights_[j];
  return total;
}

std::int64_t Constraint::max_ones() const {
  if (!is_uniform()) throw BoundNotApplicable("max_ones requires a uniform constraint");
  const std::int64_t a = weights_.empty() ? 1 : weights_.front();
  return bound_ / a;
}

Dominance dominance(const ObjectiveVector& u, const ObjectiveVector& v) {
  if (u.size() != v.size()) throw ContractViolation("dominance: objective vectors differ in length");
  bool strict = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < v[i]) return Dominance::kNone;
    if (u[i] > v[i]) strict = true;
  }
  return strict ? Dominance::kStrictlyDominates : Dominance::kWeaklyDominatesOnly;
}

bool weakly_dominates(const ObjectiveVector& u, const ObjectiveVector& v) {
  return dominance(u, v) != Dominance::kNone;
}

bool Population::insert(Member candidate) {
  for (const Member& m : members_) {
    if (dominance(m.g, candidate.g) == Dominance::kStrictlyDominates) return false;
  }
  std::erase_if(members_, [&](const Member& m) { return weakly_dominates(candidate.g, m.g); });
  members_.push_back(std::move(candidate));
  return true;
}

bool Population::is_consistent() const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (std::size_t j = 0; j < members_.size(); ++j) {
      if (i != j && dominance(members_[i].g, members_[j].g) != Dominance::kNone) return false;
    }
  }
  return true;
}

std::size_t population_bound(std::span<const Constraint> constraints, std::size_t n) {
  if (constraints.empty()) throw ContractViolation("population_bound: no constraints");
  std::int64_t widest = 0;
  for (const Constraint& c : constraints) {
    if (!c.is_uniform()) {
      throw BoundNotApplicable("population_bound: knapsack constraint present");
    }
    widest = std::max(widest, c.max_ones());
  }
  return static_cast<std::size_t>(std::min<std::int64_t>(widest, static_cast<std::int64_t>(n))) + 1;
}

}  // namespace mtsubmod
