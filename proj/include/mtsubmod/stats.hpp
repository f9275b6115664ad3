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

// Summary statistics and the two-sample Kruskal-Wallis H test used to label
// classical-vs-multitasking comparisons.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mtsubmod::stats {

inline constexpr double kSignificanceLevel = 0.05;

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution.
double chi_square_sf(double x, double dof);

// Midranks (1-based) of `values`; tied values share the mean of their ranks.
std::vector<double> midranks(std::span<const double> values);

struct KruskalWallis {
  double h = 0.0;
  double p = 1.0;
  double mean_rank_a = 0.0;
  double mean_rank_b = 0.0;
};

// H on pooled midranks with tie correction, p from chi-square with one
// degree of freedom. All-tied input gives H = 0, p = 1. Both samples need at
// least two values (std::invalid_argument otherwise).
KruskalWallis kruskal_wallis(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> v);
// Sample standard deviation (n - 1 denominator); nullopt for fewer than two
// values.
std::optional<double> sample_std(std::span<const double> v);

enum class Verdict { kMultitaskingBetter, kClassicalBetter, kNoDifference, kInsufficientData };

// "+*", "-*", "=" or "" for insufficient data.
std::string_view verdict_symbol(Verdict v);

struct ComparisonResult {
  double mean_c = 0.0;
  std::optional<double> std_c;
  double mean_m = 0.0;
  std::optional<double> std_m;
  std::optional<double> h;
  std::optional<double> p;
  Verdict verdict = Verdict::kInsufficientData;
};

// Means and sample stds of both sides; when each side has at least two
// values, a Kruskal-Wallis test whose verdict is significant at p <= 0.05 in
// the direction of the higher mean rank.
ComparisonResult compare(std::span<const double> classical, std::span<const double> multitask);

}  // namespace mtsubmod::stats
