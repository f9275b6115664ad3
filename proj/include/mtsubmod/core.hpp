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

// Solutions, linear cost constraints, objective vectors and the Pareto
// archive maintained by GSEMO.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtsubmod/bitops.hpp"

namespace mtsubmod {

// A precondition of a public operation was not met by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised by population_bound when a constraint is not uniform.
class BoundNotApplicable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BitString {
 public:
  using Word = bitops::Word;

  BitString() = default;
  explicit BitString(std::size_t n) : n_(n), words_(bitops::words_for_bits(n), 0) {}

  static BitString zeros(std::size_t n) { return BitString(n); }
  static BitString from_indices(std::size_t n, std::span<const std::size_t> ones);
  // '0'/'1' characters, position 0 first.
  static BitString from_string(std::string_view bits);

  std::size_t size() const { return n_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value = true) {
    const Word mask = Word{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= Word{1} << (i & 63); }

  std::size_t ones_count() const;
  std::vector<std::size_t> ones() const;

  std::span<const Word> words() const { return words_; }

  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString& a, const BitString& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    }
    return std::strong_ordering::equal;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Word> words_;
};

enum class ConstraintKind { kUnit, kUniformWeighted, kKnapsack };

std::string_view to_string(ConstraintKind kind);

// Linear cost c(x) = sum_j weights[j] * x[j] with feasibility c(x) <= bound.
// Weights and bound are integers (already scaled), so every feasibility test
// is exact. The kind is derived from the weights: all ones is unit, a single
// positive value is uniform-weighted, anything else is knapsack.
class Constraint {
 public:
  Constraint(std::vector<std::int64_t> weights, std::int64_t bound);

  static Constraint unit(std::size_t n, std::int64_t bound);
  static Constraint uniform(std::size_t n, std::int64_t weight, std::int64_t bound);

  std::size_t size() const { return weights_.size(); }
  std::span<const std::int64_t> weights() const { return weights_; }
  std::int64_t bound() const { return bound_; }
  ConstraintKind kind() const { return kind_; }
  bool is_uniform() const { return kind_ != ConstraintKind::kKnapsack; }

  std::int64_t cost(const BitString& x) const;
  bool feasible(const BitString& x) const { return cost(x) <= bound_; }

  // Largest |x|_1 that can be feasible; uniform kinds only.
  std::int64_t max_ones() const;

 private:
  std::vector<std::int64_t> weights_;
  std::int64_t bound_;
  ConstraintKind kind_;
};

// (g1, -c1, ..., -ck): position 0 is the primary objective, the rest are
// negated costs. All entries are maximized.
class ObjectiveVector {
 public:
  ObjectiveVector() = default;
  explicit ObjectiveVector(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double primary() const { return values_.front(); }
  // Cost of constraint i (0-based), i.e. the negation of entry i + 1.
  double cost(std::size_t i) const { return -values_[i + 1]; }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;

 private:
  std::vector<double> values_;
};

enum class Dominance {
  kStrictlyDominates,    // u >= v everywhere, > somewhere
  kWeaklyDominatesOnly,  // u == v
  kNone,
};

// Relation of u to v. Throws ContractViolation on length mismatch.
Dominance dominance(const ObjectiveVector& u, const ObjectiveVector& v);

// u >= v componentwise.
bool weakly_dominates(const ObjectiveVector& u, const ObjectiveVector& v);

struct Member {
  BitString x;
  ObjectiveVector g;
  // Evaluation cache owned by the objective that produced g; opaque here.
  std::vector<std::uint64_t> eval_state;
};

// Archive of mutually nondominated search points with pairwise distinct
// objective vectors.
class Population {
 public:
  Population() = default;

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const Member& operator[](std::size_t i) const { return members_[i]; }
  std::span<const Member> members() const { return members_; }

  // GSEMO acceptance rule. If some member strictly dominates the candidate it
  // is rejected; otherwise every member the candidate weakly dominates
  // (including an equal vector) is removed and the candidate is appended.
  // Returns whether the candidate was accepted.
  bool insert(Member candidate);

  bool insert(BitString y, ObjectiveVector gy) {
    return insert(Member{std::move(y), std::move(gy), {}});
  }

  // Checks mutual nondominance and vector uniqueness by pairwise comparison.
  bool is_consistent() const;

 private:
  std::vector<Member> members_;
};

// Value-semantics form of Population::insert.
inline Population population_insert(Population p, BitString y, ObjectiveVector gy) {
  p.insert(std::move(y), std::move(gy));
  return p;
}

// Archive size bound for uniform constraints:
// min(max_i floor(B_i / a_i), n) + 1. Throws BoundNotApplicable if any
// constraint is knapsack.
std::size_t population_bound(std::span<const Constraint> constraints, std::size_t n);

}  // namespace mtsubmod
