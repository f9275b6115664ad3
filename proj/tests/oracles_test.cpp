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

#include "mtsubmod/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mtsubmod/rng.hpp"

namespace mtsubmod::oracles {
namespace {

Graph random_graph(Xoshiro256& rng, std::size_t n, std::size_t m) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t i = 0; i < m; ++i) {
    edges.emplace_back(static_cast<std::uint32_t>(rng.below(n)),
                       static_cast<std::uint32_t>(rng.below(n)));
  }
  return Graph(n, edges);
}

// f(x) = |x|_1^2: monotone but supermodular.
class SquaredCount final : public SubmodularFunction {
 public:
  explicit SquaredCount(std::size_t n) : n_(n) {}
  std::size_t ground_size() const override { return n_; }
  std::string_view name() const override { return "squared-count"; }
  double evaluate(const BitString& x) const override {
    require_size(x);
    const auto c = static_cast<double>(x.ones_count());
    return c * c;
  }

 private:
  std::size_t n_;
};

// f(x) = n - |x|_1: modular but decreasing.
class Decreasing final : public SubmodularFunction {
 public:
  explicit Decreasing(std::size_t n) : n_(n) {}
  std::size_t ground_size() const override { return n_; }
  std::string_view name() const override { return "decreasing"; }
  double evaluate(const BitString& x) const override {
    require_size(x);
    return static_cast<double>(n_ - x.ones_count());
  }

 private:
  std::size_t n_;
};

// Plain loop over all 2^n masks; independent of the Gray-code enumerator.
double naive_opt(const SubmodularFunction& f, const Constraint& c) {
  const std::size_t n = f.ground_size();
  double best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BitString x(n);
    for (std::size_t j = 0; j < n; ++j) {
      if ((mask >> j) & 1U) x.set(j);
    }
    if (c.feasible(x)) best = std::max(best, f.evaluate(x));
  }
  return best;
}

TEST(BruteForce, MatchesNaiveEnumeration) {
  Xoshiro256 rng(1);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng.below(11);
    const CoverageObjective f(random_graph(rng, n, 2 * n));
    std::vector<std::int64_t> w(n);
    for (auto& v : w) v = 1 + static_cast<std::int64_t>(rng.below(5));
    const Constraint c(w, static_cast<std::int64_t>(rng.below(12)));
    const Optimum opt = brute_force_opt(f, c);
    ASSERT_EQ(opt.value, naive_opt(f, c));
    ASSERT_TRUE(c.feasible(opt.witness));
    ASSERT_EQ(f.evaluate(opt.witness), opt.value);
  }
}

TEST(BruteForce, WitnessTieBreak) {
  const ModularObjective f({1, 1, 0, 1});
  const Optimum opt = brute_force_opt(f, Constraint::unit(4, 2));
  EXPECT_EQ(opt.value, 2.0);
  // Among the size-two optima {0,1}, {0,3}, {1,3}, the smallest bit string
  // in word order is {0,1}.
  EXPECT_EQ(opt.witness, BitString::from_string("1100"));
  const Optimum zero = brute_force_opt(f, Constraint::unit(4, 0));
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_EQ(zero.witness, BitString(4));
}

TEST(BruteForce, RefusesLargeInstances) {
  const ModularObjective f(std::vector<double>(kMaxEnumerationSize + 1, 1.0));
  EXPECT_THROW(brute_force_opt(f, Constraint::unit(kMaxEnumerationSize + 1, 1)),
               std::invalid_argument);
}

TEST(CardinalityTable, MatchesPerBoundBruteForce) {
  Xoshiro256 rng(2);
  const std::size_t n = 12;
  const CoverageObjective f(random_graph(rng, n, 20));
  const auto table = cardinality_opt_table(f, n + 2);
  ASSERT_EQ(table.size(), n + 3);
  for (std::size_t b = 0; b < table.size(); ++b) {
    EXPECT_EQ(table[b], brute_force_opt(f, Constraint::unit(n, static_cast<std::int64_t>(b))).value);
    if (b > 0) {
      EXPECT_GE(table[b], table[b - 1]);
    }
  }
}

TEST(Greedy, PathAndRatio) {
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  const CoverageObjective f(Graph(5, e));
  const BitString x = greedy(f, Constraint::unit(5, 2));
  EXPECT_EQ(x.ones_count(), 2U);
  EXPECT_EQ(f.evaluate(x), 5.0);

  Xoshiro256 rng(3);
  const double ratio = 1.0 - 1.0 / std::numbers::e;
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 4 + rng.below(10);
    const CoverageObjective g(random_graph(rng, n, n + rng.below(2 * n)));
    const Constraint c = Constraint::uniform(n, 1 + static_cast<std::int64_t>(rng.below(3)),
                                             static_cast<std::int64_t>(rng.below(10)));
    const BitString y = greedy(g, c);
    ASSERT_TRUE(c.feasible(y));
    ASSERT_GE(g.evaluate(y), ratio * brute_force_opt(g, c).value);
  }
}

TEST(Greedy, KnapsackNotSupported) {
  const ModularObjective f({1, 2});
  EXPECT_THROW(greedy(f, Constraint({1, 2}, 2)), BoundNotApplicable);
}

TEST(PropertyCheck, CoveragePasses) {
  Xoshiro256 rng(4);
  for (int t = 0; t < 5; ++t) {
    const CoverageObjective f(random_graph(rng, 80, 200));
    const PropertyReport r = check_submodular_monotone(f, 500, rng());
    EXPECT_TRUE(r.passed()) << r.violations.front().describe();
    EXPECT_EQ(r.trials, 500U);
    EXPECT_GT(r.submodularity_checks, 0U);
  }
}

TEST(PropertyCheck, ModularIsTight) {
  const ModularObjective f({1, 2, 3, 4, 5});
  const PropertyReport r = check_submodular_monotone(f, 300, 9);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.tight, r.submodularity_checks);
}

TEST(PropertyCheck, FlagsSupermodularAndDecreasing) {
  const PropertyReport sq = check_submodular_monotone(SquaredCount(12), 1000, 5);
  ASSERT_FALSE(sq.passed());
  bool saw_submodularity = false;
  for (const auto& v : sq.violations) {
    saw_submodularity = saw_submodularity || v.kind == PropertyViolation::Kind::kSubmodularity;
  }
  EXPECT_TRUE(saw_submodularity);
  EXPECT_NE(sq.violations.front().describe().find("A={"), std::string::npos);

  const PropertyReport dec = check_submodular_monotone(Decreasing(12), 1000, 6);
  ASSERT_FALSE(dec.passed());
  EXPECT_EQ(dec.violations.front().kind, PropertyViolation::Kind::kMonotonicity);
}

}  // namespace
}  // namespace mtsubmod::oracles
