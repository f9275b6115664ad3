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

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mtsubmod/rng.hpp"

namespace mtsubmod::oracles {
namespace {

void require_enumerable(std::size_t n) {
  if (n > kMaxEnumerationSize) {
    throw std::invalid_argument("brute force refused: n = " + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxEnumerationSize));
  }
}

// Visits all 2^n points in Gray-code order. The visitor sees the current
// point, its value and its ones count.
template <class Visit>
void enumerate_gray(const SubmodularFunction& f, Visit&& visit) {
  const std::size_t n = f.ground_size();
  require_enumerable(n);
  BitString x(n);
  auto tracker = f.incremental(x);
  std::size_t ones = 0;
  visit(x, tracker->value(), ones, std::size_t{n});  // n marks "no toggle"
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto j = static_cast<std::size_t>(std::countr_zero(i));
    const bool adding = !x.test(j);
    x.flip(j);
    ones += adding ? 1 : 0;
    ones -= adding ? 0 : 1;
    const double value = tracker->toggle(j);
    visit(x, value, ones, j);
  }
}

}  // namespace

Optimum brute_force_opt(const SubmodularFunction& f, const Constraint& c) {
  if (c.size() != f.ground_size()) throw ContractViolation("brute_force_opt: size mismatch");
  std::int64_t cost = 0;
  Optimum best{-1.0, BitString(f.ground_size())};
  std::size_t best_ones = 0;
  bool have = false;
  enumerate_gray(f, [&](const BitString& x, double value, std::size_t ones, std::size_t toggled) {
    if (toggled < x.size()) {
      const std::int64_t w = c.weights()[toggled];
      cost += x.test(toggled) ? w : -w;
    }
    if (cost > c.bound()) return;
    const bool better = !have || value > best.value ||
                        (value == best.value &&
                         (ones < best_ones || (ones == best_ones && x < best.witness)));
    if (better) {
      best.value = value;
      best.witness = x;
      best_ones = ones;
      have = true;
    }
  });
  return best;
}

std::vector<double> cardinality_opt_table(const SubmodularFunction& f, std::size_t max_ones) {
  const std::size_t n = f.ground_size();
  std::vector<double> by_count(n + 1, -1.0);
  enumerate_gray(f, [&](const BitString&, double value, std::size_t ones, std::size_t) {
    by_count[ones] = std::max(by_count[ones], value);
  });
  std::vector<double> table(std::min(max_ones, n) + 1);
  double running = by_count[0];
  for (std::size_t b = 0; b < table.size(); ++b) {
    running = std::max(running, by_count[b]);
    table[b] = running;
  }
  // Bounds beyond n saturate at OPT_n.
  table.resize(max_ones + 1, running);
  return table;
}

BitString greedy(const SubmodularFunction& f, const Constraint& c) {
  if (!c.is_uniform()) throw BoundNotApplicable("greedy: knapsack constraints are not supported");
  if (c.size() != f.ground_size()) throw ContractViolation("greedy: size mismatch");
  const std::size_t n = f.ground_size();
  const auto capacity = static_cast<std::size_t>(std::min<std::int64_t>(
      c.max_ones(), static_cast<std::int64_t>(n)));
  BitString x(n);
  auto tracker = f.incremental(x);
  for (std::size_t picked = 0; picked < capacity; ++picked) {
    const double base = tracker->value();
    std::size_t best_item = n;
    double best_gain = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (x.test(j)) continue;
      const double gain = tracker->toggle(j) - base;
      tracker->toggle(j);
      if (best_item == n || gain > best_gain) {
        best_item = j;
        best_gain = gain;
      }
    }
    if (best_item == n) break;
    x.set(best_item);
    tracker->toggle(best_item);
  }
  return x;
}

std::string PropertyViolation::describe() const {
  std::ostringstream out;
  if (kind == Kind::kMonotonicity) {
    out << "monotonicity: f(A)=" << lhs << " > f(B)=" << rhs;
  } else {
    out << "submodularity: gain at A=" << lhs << " < gain at B=" << rhs << " for x=" << item;
  }
  out << " with A={";
  const char* sep = "";
  for (std::size_t v : smaller.ones()) {
    out << sep << v;
    sep = ",";
  }
  out << "} B={";
  sep = "";
  for (std::size_t v : larger.ones()) {
    out << sep << v;
    sep = ",";
  }
  out << "}";
  return out.str();
}

PropertyReport check_submodular_monotone(const SubmodularFunction& f, std::size_t trials,
                                         std::uint64_t seed) {
  if (trials == 0) throw ContractViolation("check_submodular_monotone: trials must be positive");
  const std::size_t n = f.ground_size();
  PropertyReport report;
  if (n == 0) return report;
  Xoshiro256 rng(seed);
  auto tolerance = [](double a, double b) {
    return 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  for (std::size_t t = 0; t < trials; ++t) {
    // B keeps each item with a per-trial density; A keeps each item of B with
    // another, so chains of all shapes (including A = B) are sampled.
    const double density_b = rng.uniform01();
    const double density_a = rng.uniform01();
    BitString larger(n);
    BitString smaller(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.bernoulli(density_b)) {
        larger.set(j);
        if (rng.bernoulli(density_a)) smaller.set(j);
      }
    }
    const std::size_t outside = n - larger.ones_count();
    ++report.trials;

    const double fa = f.evaluate(smaller);
    const double fb = f.evaluate(larger);
    if (fa > fb + tolerance(fa, fb)) {
      report.violations.push_back(
          {PropertyViolation::Kind::kMonotonicity, smaller, larger, 0, fa, fb});
    }
    if (outside == 0) continue;
    ++report.submodularity_checks;

    std::size_t pick = rng.below(outside);
    std::size_t item = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (larger.test(j)) continue;
      if (pick-- == 0) {
        item = j;
        break;
      }
    }
    BitString a_plus = smaller;
    a_plus.set(item);
    BitString b_plus = larger;
    b_plus.set(item);
    const double gain_a = f.evaluate(a_plus) - fa;
    const double gain_b = f.evaluate(b_plus) - fb;
    const double tol = tolerance(gain_a, gain_b);
    if (gain_a + tol < gain_b) {
      report.violations.push_back(
          {PropertyViolation::Kind::kSubmodularity, smaller, larger, item, gain_a, gain_b});
    } else if (std::abs(gain_a - gain_b) <= tol) {
      ++report.tight;
    }
  }
  return report;
}

}  // namespace mtsubmod::oracles
