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

#include <gtest/gtest.h>

#include <vector>

#include "mtsubmod/rng.hpp"

namespace mtsubmod {
namespace {

ObjectiveVector vec(std::initializer_list<double> v) { return ObjectiveVector(std::vector<double>(v)); }

TEST(BitString, BasicOperations) {
  BitString x(70);
  EXPECT_EQ(x.size(), 70U);
  EXPECT_EQ(x.ones_count(), 0U);
  x.set(0);
  x.set(69);
  x.flip(3);
  EXPECT_TRUE(x.test(0));
  EXPECT_TRUE(x.test(3));
  EXPECT_TRUE(x.test(69));
  EXPECT_EQ(x.ones_count(), 3U);
  EXPECT_EQ(x.ones(), (std::vector<std::size_t>{0, 3, 69}));
  x.set(3, false);
  EXPECT_EQ(x.ones_count(), 2U);
}

TEST(BitString, StringRoundTrip) {
  const auto x = BitString::from_string("0110001");
  EXPECT_EQ(x.to_string(), "0110001");
  EXPECT_EQ(x.ones(), (std::vector<std::size_t>{1, 2, 6}));
  const std::vector<std::size_t> idx{1, 2, 6};
  EXPECT_EQ(BitString::from_indices(7, idx), x);
  EXPECT_THROW(BitString::from_string("01x"), ContractViolation);
}

TEST(Constraint, KindIsDerivedFromWeights) {
  EXPECT_EQ(Constraint::unit(4, 2).kind(), ConstraintKind::kUnit);
  EXPECT_EQ(Constraint::uniform(4, 3, 9).kind(), ConstraintKind::kUniformWeighted);
  EXPECT_EQ(Constraint({1, 2, 3}, 4).kind(), ConstraintKind::kKnapsack);
  EXPECT_THROW(Constraint({1, -1}, 4), ContractViolation);
  EXPECT_THROW(Constraint({1, 1}, -1), ContractViolation);
}

TEST(Constraint, CostAndFeasibility) {
  const Constraint c({2, 5, 7}, 7);
  EXPECT_EQ(c.cost(BitString::from_string("110")), 7);
  EXPECT_TRUE(c.feasible(BitString::from_string("110")));
  EXPECT_FALSE(c.feasible(BitString::from_string("011")));
  EXPECT_EQ(Constraint::uniform(5, 2, 5).max_ones(), 2);
  EXPECT_THROW(c.max_ones(), BoundNotApplicable);
}

TEST(Dominance, SpecExamples) {
  EXPECT_EQ(dominance(vec({3, -2}), vec({2, -2})), Dominance::kStrictlyDominates);
  EXPECT_EQ(dominance(vec({3, -2}), vec({3, -2})), Dominance::kWeaklyDominatesOnly);
  EXPECT_EQ(dominance(vec({3, -5}), vec({2, -2})), Dominance::kNone);
}

TEST(Dominance, LengthMismatchIsContractViolation) {
  EXPECT_THROW(dominance(vec({1, 2}), vec({1, 2, 3})), ContractViolation);
}

TEST(Dominance, PartialOrderProperties) {
  Xoshiro256 rng(42);
  auto random_vec = [&] {
    // Small value range so equal coordinates occur often.
    return vec({static_cast<double>(rng.below(4)), -static_cast<double>(rng.below(4)),
                -static_cast<double>(rng.below(3))});
  };
  for (int t = 0; t < 20000; ++t) {
    const auto u = random_vec();
    const auto v = random_vec();
    const auto w = random_vec();
    ASSERT_TRUE(weakly_dominates(u, u));
    if (weakly_dominates(u, v) && weakly_dominates(v, u)) {
      ASSERT_EQ(u, v);
    }
    if (weakly_dominates(u, v) && weakly_dominates(v, w)) {
      ASSERT_TRUE(weakly_dominates(u, w));
    }
    const Dominance d = dominance(u, v);
    ASSERT_EQ(d == Dominance::kWeaklyDominatesOnly, u == v);
    ASSERT_EQ(d != Dominance::kNone, weakly_dominates(u, v));
  }
}

TEST(PopulationInsert, EqualVectorReplacesIncumbent) {
  Population p;
  p = population_insert(std::move(p), BitString::from_string("10"), vec({3, -2}));
  p = population_insert(std::move(p), BitString::from_string("01"), vec({3, -2}));
  ASSERT_EQ(p.size(), 1U);
  EXPECT_EQ(p[0].x, BitString::from_string("01"));
}

TEST(PopulationInsert, StrictlyDominatedIsRejected) {
  Population p;
  p.insert(BitString::from_string("10"), vec({5, -3}));
  EXPECT_FALSE(p.insert(BitString::from_string("01"), vec({4, -3})));
  ASSERT_EQ(p.size(), 1U);
  EXPECT_EQ(p[0].x, BitString::from_string("10"));
}

TEST(PopulationInsert, IncomparablePointsCoexist) {
  Population p;
  p.insert(BitString::from_string("10"), vec({5, -3}));
  EXPECT_TRUE(p.insert(BitString::from_string("00"), vec({2, 0})));
  EXPECT_EQ(p.size(), 2U);
}

TEST(PopulationInsert, DominatingPointRemovesAllItDominates) {
  Population p;
  p.insert(BitString::from_string("100"), vec({5, -3}));
  p.insert(BitString::from_string("010"), vec({2, -1}));
  p.insert(BitString::from_string("000"), vec({0, 0}));
  EXPECT_TRUE(p.insert(BitString::from_string("001"), vec({6, -1})));
  ASSERT_EQ(p.size(), 2U);
  EXPECT_TRUE(p.is_consistent());
}

TEST(PopulationInsert, FuzzPreservesNondominanceAndUniqueness) {
  Xoshiro256 rng(7);
  for (int run = 0; run < 200; ++run) {
    Population p;
    const std::size_t dims = 2 + rng.below(3);
    for (int step = 0; step < 300; ++step) {
      std::vector<double> v(dims);
      for (auto& e : v) e = static_cast<double>(rng.below(6));
      BitString x(8);
      x.set(rng.below(8));
      p.insert(std::move(x), ObjectiveVector(std::move(v)));
      ASSERT_TRUE(p.is_consistent());
    }
    const auto members = p.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (i == j) continue;
        ASSERT_NE(members[i].g, members[j].g);
        ASSERT_NE(dominance(members[i].g, members[j].g), Dominance::kStrictlyDominates);
      }
    }
  }
}

TEST(PopulationBound, SpecExamples) {
  const std::vector<Constraint> two{Constraint::uniform(10, 1, 5), Constraint::uniform(10, 2, 5)};
  EXPECT_EQ(population_bound(two, 10), 6U);
  const std::vector<Constraint> capped{Constraint::unit(10, 100)};
  EXPECT_EQ(population_bound(capped, 10), 11U);
  const std::vector<Constraint> zero{Constraint::unit(10, 0)};
  EXPECT_EQ(population_bound(zero, 10), 1U);
}

TEST(PopulationBound, KnapsackIsNotApplicable) {
  const std::vector<Constraint> mixed{Constraint::unit(3, 2), Constraint({1, 2, 3}, 3)};
  EXPECT_THROW(population_bound(mixed, 3), BoundNotApplicable);
}

TEST(PopulationBound, HoldsForUniformInsertionSequences) {
  // Insert random points under the classical-style two-objective
  // vector (f if feasible else -1, -|x|_1 * a) and check the archive bound.
  Xoshiro256 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng.below(5);
    const std::int64_t a = 1 + static_cast<std::int64_t>(rng.below(3));
    const std::int64_t bound = static_cast<std::int64_t>(rng.below(3 * n));
    const std::vector<Constraint> cs{Constraint::uniform(n, a, bound)};
    const std::size_t u = population_bound(cs, n);
    std::vector<double> item(n);
    for (auto& v : item) v = static_cast<double>(rng.below(5));
    Population p;
    p.insert(BitString(n), vec({0, 0}));
    for (int step = 0; step < 500; ++step) {
      BitString x(n);
      double f = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (rng.below(2)) {
          x.set(j);
          f = std::max(f, item[j]) + 1;  // monotone in x
        }
      }
      const std::int64_t cost = cs[0].cost(x);
      p.insert(x, vec({cost <= bound ? f : -1.0, -static_cast<double>(cost)}));
      ASSERT_LE(p.size(), u);
    }
  }
}

}  // namespace
}  // namespace mtsubmod
