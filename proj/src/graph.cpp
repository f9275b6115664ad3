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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "mtsubmod/rng.hpp"

namespace mtsubmod {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

Graph::Graph(std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges)
    : adjacency_(n) {
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw ContractViolation("Graph: edge endpoint out of range");
    if (u == v) continue;
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    edge_count_ += list.size();
  }
  edge_count_ /= 2;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

Graph Graph::induced(std::span<const std::uint32_t> vertices) const {
  std::vector<std::int64_t> relabel(vertex_count(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= vertex_count()) throw ContractViolation("induced: vertex out of range");
    relabel[vertices[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::uint32_t w : adjacency_[vertices[i]]) {
      if (relabel[w] > static_cast<std::int64_t>(i)) {
        edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(relabel[w]));
      }
    }
  }
  return Graph(vertices.size(), edges);
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "auto") return GraphFormat::kAuto;
  if (name == "edge-list" || name == "edges") return GraphFormat::kEdgeList;
  if (name == "matrix-market" || name == "mtx") return GraphFormat::kMatrixMarket;
  throw std::invalid_argument("unknown graph format: " + std::string(name));
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::uint64_t parse_id(std::string_view token, const std::string& source, std::size_t line) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(source, line, "expected a nonnegative integer, got '" + std::string(token) + "'");
  }
  return value;
}

bool is_comment(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '%' || line[first] == '#';
}

Graph parse_edge_list(std::istream& in, const std::string& source) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment(line)) continue;
    const auto tokens = split_ws(line);
    if (tokens.size() < 2) throw ParseError(source, line_no, "expected 'u v'");
    raw.emplace_back(parse_id(tokens[0], source, line_no), parse_id(tokens[1], source, line_no));
  }
  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](std::uint64_t id) {
    return static_cast<std::uint32_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.emplace_back(dense(u), dense(v));
  return Graph(ids.size(), edges);
}

Graph parse_matrix_market(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::uint64_t> declared;
  bool saw_data = false;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment(line)) continue;
    const auto tokens = split_ws(line);
    if (!saw_data && !declared && tokens.size() == 3) {
      // First non-comment line with three fields is the size line.
      declared = std::max(parse_id(tokens[0], source, line_no), parse_id(tokens[1], source, line_no));
      parse_id(tokens[2], source, line_no);
      continue;
    }
    if (tokens.size() < 2) throw ParseError(source, line_no, "expected 'row col [value]'");
    saw_data = true;
    const auto u = parse_id(tokens[0], source, line_no);
    const auto v = parse_id(tokens[1], source, line_no);
    if (u == 0 || v == 0) throw ParseError(source, line_no, "MatrixMarket indices are 1-based");
    if (declared && (u > *declared || v > *declared)) {
      throw ParseError(source, line_no,
                       "vertex id exceeds declared size " + std::to_string(*declared));
    }
    raw.emplace_back(u - 1, v - 1);
  }
  std::uint64_t n = declared.value_or(0);
  if (!declared) {
    for (auto [u, v] : raw) n = std::max({n, u + 1, v + 1});
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  return Graph(n, edges);
}

}  // namespace

Graph parse_graph(std::istream& in, GraphFormat format, const std::string& source) {
  if (format == GraphFormat::kAuto) {
    std::string first;
    const auto pos = in.tellg();
    std::getline(in, first);
    format = first.rfind("%%MatrixMarket", 0) == 0 ? GraphFormat::kMatrixMarket
                                                     : GraphFormat::kEdgeList;
    in.clear();
    if (pos != std::streampos(-1)) {
      in.seekg(pos);
    } else {
      throw ParseError(source, 1, "format autodetection needs a seekable stream");
    }
  }
  return format == GraphFormat::kMatrixMarket ? parse_matrix_market(in, source)
                                              : parse_edge_list(in, source);
}

Graph parse_graph(const std::filesystem::path& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return parse_graph(in, format, path.string());
}

void write_matrix_market(const Graph& g, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
  out << g.vertex_count() << ' ' << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    for (std::uint32_t v : g.neighbors(u)) {
      if (v < u) out << u + 1 << ' ' << v + 1 << '\n';
    }
  }
}

std::string_view to_string(CostRegime regime) {
  switch (regime) {
    case CostRegime::kUnit:
      return "unit";
    case CostRegime::kRandomLinear:
      return "random-linear";
    case CostRegime::kDegreeLinear:
      return "degree-linear";
  }
  return "?";
}

CostRegime parse_cost_regime(std::string_view name) {
  if (name == "unit") return CostRegime::kUnit;
  if (name == "random-linear") return CostRegime::kRandomLinear;
  if (name == "degree-linear") return CostRegime::kDegreeLinear;
  throw std::invalid_argument("unknown cost regime: " + std::string(name));
}

Constraint build_constraint(const Graph& g, CostRegime regime, std::int64_t bound,
                            std::uint64_t seed) {
  if (bound <= 0) throw ContractViolation("build_constraint: bound must be positive");
  const std::size_t n = g.vertex_count();
  switch (regime) {
    case CostRegime::kUnit:
      return Constraint::unit(n, bound);
    case CostRegime::kRandomLinear: {
      Xoshiro256 rng(seed);
      std::vector<std::int64_t> weights(n);
      for (auto& w : weights) w = static_cast<std::int64_t>(std::ceil(rng.uniform(50.0, 150.0)));
      return Constraint(std::move(weights), bound * kRandomLinearScale);
    }
    case CostRegime::kDegreeLinear: {
      std::vector<std::int64_t> weights(n);
      for (std::size_t v = 0; v < n; ++v) weights[v] = static_cast<std::int64_t>(g.degree(v));
      return Constraint(std::move(weights), bound);
    }
  }
  throw ContractViolation("build_constraint: unknown regime");
}

}  // namespace mtsubmod
