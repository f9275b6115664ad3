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

#include "mtsubmod/graph.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "mtsubmod/rng.hpp"

namespace mtsubmod {
namespace {

Graph parse(const std::string& text, GraphFormat format = GraphFormat::kAuto) {
  std::istringstream in(text);
  return parse_graph(in, format, "test");
}

Graph random_graph(Xoshiro256& rng, std::size_t n, std::size_t m) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t i = 0; i < m; ++i) {
    edges.emplace_back(static_cast<std::uint32_t>(rng.below(n)),
                       static_cast<std::uint32_t>(rng.below(n)));
  }
  return Graph(n, edges);
}

TEST(ParseGraph, EdgeListFixture) {
  const Graph g = parse("1 2\n2 3\n", GraphFormat::kEdgeList);
  EXPECT_EQ(g.vertex_count(), 3U);
  EXPECT_EQ(g.edge_count(), 2U);
  EXPECT_EQ(g.degree(0), 1U);
  EXPECT_EQ(g.degree(1), 2U);
  EXPECT_EQ(g.degree(2), 1U);
}

TEST(ParseGraph, DuplicateEdgesCollapse) {
  const Graph g = parse("1 2\n2 1\n", GraphFormat::kEdgeList);
  EXPECT_EQ(g.edge_count(), 1U);
}

TEST(ParseGraph, SelfLoopsAndCommentsAreSkipped) {
  const Graph g = parse("% comment\n# another\n1 1\n1 2 0.5\n\n", GraphFormat::kEdgeList);
  EXPECT_EQ(g.vertex_count(), 2U);
  EXPECT_EQ(g.edge_count(), 1U);
}

TEST(ParseGraph, EdgeListIdsAreCompacted) {
  const Graph g = parse("10 30\n30 20\n", GraphFormat::kEdgeList);
  ASSERT_EQ(g.vertex_count(), 3U);
  // 10 -> 0, 20 -> 1, 30 -> 2
  EXPECT_EQ(std::vector<std::uint32_t>(g.neighbors(2).begin(), g.neighbors(2).end()),
            (std::vector<std::uint32_t>{0, 1}));
}

TEST(ParseGraph, MatrixMarketWithSizeLine) {
  const Graph g = parse(
      "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n4 4 2\n2 1\n3 2\n");
  EXPECT_EQ(g.vertex_count(), 4U);  // vertex 4 is isolated but declared
  EXPECT_EQ(g.edge_count(), 2U);
  EXPECT_EQ(g.degree(3), 0U);
}

TEST(ParseGraph, ErrorsCarryLineNumbers) {
  try {
    parse("1 2\nx y\n", GraphFormat::kEdgeList);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
  }
  try {
    parse("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 1\n1 4\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
  EXPECT_THROW(parse("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 1\n0 1\n"),
               ParseError);
  EXPECT_THROW(parse("1\n", GraphFormat::kEdgeList), ParseError);
  EXPECT_THROW(parse_graph(std::filesystem::path("/nonexistent/graph.mtx")), ParseError);
}

TEST(ParseGraph, RoundTripIsIdentity) {
  Xoshiro256 rng(17);
  for (int t = 0; t < 50; ++t) {
    const Graph g = random_graph(rng, 1 + rng.below(60), rng.below(200));
    std::ostringstream out;
    write_matrix_market(g, out);
    const Graph again = parse(out.str());
    ASSERT_EQ(g, again);
    std::ostringstream out2;
    write_matrix_market(again, out2);
    ASSERT_EQ(out.str(), out2.str());
  }
}

TEST(GraphInvariants, SymmetricSortedNoLoops) {
  Xoshiro256 rng(23);
  const Graph g = random_graph(rng, 40, 300);
  std::size_t degree_sum = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto nb = g.neighbors(v);
    degree_sum += nb.size();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      EXPECT_NE(nb[i], v);
      if (i > 0) {
        EXPECT_LT(nb[i - 1], nb[i]);
      }
      const auto back = g.neighbors(nb[i]);
      EXPECT_TRUE(std::binary_search(back.begin(), back.end(), static_cast<std::uint32_t>(v)));
    }
  }
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
}

TEST(GraphInvariants, InducedSubgraphKeepsInternalEdges) {
  const Graph g = parse("1 2\n2 3\n3 4\n4 1\n", GraphFormat::kEdgeList);
  const std::vector<std::uint32_t> keep{0, 1, 2};
  const Graph h = g.induced(keep);
  EXPECT_EQ(h.vertex_count(), 3U);
  EXPECT_EQ(h.edge_count(), 2U);
}

TEST(BuildConstraint, Unit) {
  const Graph g = parse("1 2\n2 3\n", GraphFormat::kEdgeList);
  const Constraint c = build_constraint(g, CostRegime::kUnit, 12, 0);
  EXPECT_EQ(c.kind(), ConstraintKind::kUnit);
  EXPECT_EQ(c.bound(), 12);
}

TEST(BuildConstraint, RandomLinearRangeAndScale) {
  Xoshiro256 rng(1);
  const Graph g = random_graph(rng, 500, 1000);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Constraint c = build_constraint(g, CostRegime::kRandomLinear, 12, seed);
    EXPECT_EQ(c.bound(), 1200);
    for (std::int64_t w : c.weights()) {
      ASSERT_GE(w, 50);
      ASSERT_LE(w, 150);
    }
  }
}

TEST(BuildConstraint, RandomLinearIsReproducibleAndSeedSensitive) {
  Xoshiro256 rng(2);
  const Graph g = random_graph(rng, 200, 400);
  const Constraint a = build_constraint(g, CostRegime::kRandomLinear, 5, 99);
  const Constraint b = build_constraint(g, CostRegime::kRandomLinear, 5, 99);
  const Constraint c = build_constraint(g, CostRegime::kRandomLinear, 5, 100);
  EXPECT_TRUE(std::equal(a.weights().begin(), a.weights().end(), b.weights().begin()));
  EXPECT_FALSE(std::equal(a.weights().begin(), a.weights().end(), c.weights().begin()));
}

TEST(BuildConstraint, DegreeLinearOnPath) {
  const Graph g = parse("1 2\n2 3\n", GraphFormat::kEdgeList);
  const Constraint c = build_constraint(g, CostRegime::kDegreeLinear, 1, 0);
  EXPECT_EQ(std::vector<std::int64_t>(c.weights().begin(), c.weights().end()),
            (std::vector<std::int64_t>{1, 2, 1}));
  EXPECT_EQ(c.bound(), 1);
  EXPECT_TRUE(c.feasible(BitString::from_string("100")));
  EXPECT_FALSE(c.feasible(BitString::from_string("010")));
}

TEST(BuildConstraint, NonPositiveBoundRejected) {
  const Graph g = parse("1 2\n", GraphFormat::kEdgeList);
  EXPECT_THROW(build_constraint(g, CostRegime::kUnit, 0, 0), ContractViolation);
}

TEST(Names, RoundTrip) {
  for (CostRegime r : {CostRegime::kUnit, CostRegime::kRandomLinear, CostRegime::kDegreeLinear}) {
    EXPECT_EQ(parse_cost_regime(to_string(r)), r);
  }
  EXPECT_EQ(parse_graph_format("mtx"), GraphFormat::kMatrixMarket);
  EXPECT_THROW(parse_graph_format("csv"), std::invalid_argument);
}

}  // namespace
}  // namespace mtsubmod
