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

// Undirected simple graphs read from Network Repository style files, and the
// three vertex-cost regimes used by the coverage experiments.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtsubmod/core.hpp"

namespace mtsubmod {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class Graph {
 public:
  Graph() = default;
  // Edges are 0-based; self-loops and duplicates (in either orientation) are
  // dropped.
  Graph(std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const std::uint32_t> neighbors(std::size_t v) const { return adjacency_[v]; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
  std::size_t max_degree() const;

  // Subgraph induced by `vertices` (relabelled 0..k-1 in the given order).
  Graph induced(std::span<const std::uint32_t> vertices) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::size_t edge_count_ = 0;
};

enum class GraphFormat { kAuto, kEdgeList, kMatrixMarket };

GraphFormat parse_graph_format(std::string_view name);

// Edge list: "u v [ignored...]" per line, '%' or '#' comments. Vertex ids are
// compacted to dense 0-based ids in increasing order of the original id.
// MatrixMarket: "%%MatrixMarket" banner, optional size line "rows cols nnz",
// then 1-based "row col [value]" entries; ids must lie in 1..rows.
// kAuto picks MatrixMarket when the first line carries the banner.
Graph parse_graph(std::istream& in, GraphFormat format, const std::string& source = "<stream>");
Graph parse_graph(const std::filesystem::path& path, GraphFormat format = GraphFormat::kAuto);

// Canonical serialization: MatrixMarket pattern-symmetric, one "u v" line per
// edge with u > v, sorted. Reparsing yields an identical Graph.
void write_matrix_market(const Graph& g, std::ostream& out);

enum class CostRegime { kUnit, kRandomLinear, kDegreeLinear };

std::string_view to_string(CostRegime regime);
CostRegime parse_cost_regime(std::string_view name);

// Random-linear: u ~ U[50,150) continuous, weight = ceil(u), bound scaled by
// this factor so the nominal bound B becomes 100 * B.
inline constexpr std::int64_t kRandomLinearScale = 100;

// unit:          weights 1, bound B
// random-linear: weights ceil(U[50,150)) drawn from `seed`, bound 100 * B
// degree-linear: weights deg(v), bound B
Constraint build_constraint(const Graph& g, CostRegime regime, std::int64_t bound,
                            std::uint64_t seed);

}  // namespace mtsubmod
