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

#include "mtsubmod/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mtsubmod::stats {
namespace {

constexpr double kGammaEpsilon = 1e-15;
constexpr int kGammaMaxIterations = 10000;

// P(a, x) by its power series; converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kGammaMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kGammaEpsilon) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the Legendre continued fraction (modified Lentz).
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kGammaEpsilon;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kGammaMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kGammaEpsilon) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("regularized_gamma_q: domain error");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi_square_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

std::vector<double> midranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share ranks i+1..j+1
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

KruskalWallis kruskal_wallis(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("kruskal_wallis: each sample needs at least two values");
  }
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = midranks(pooled);

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;
  const double rank_sum_a = std::accumulate(ranks.begin(), ranks.begin() + a.size(), 0.0);
  const double rank_sum_b = std::accumulate(ranks.begin() + a.size(), ranks.end(), 0.0);

  KruskalWallis out;
  out.mean_rank_a = rank_sum_a / na;
  out.mean_rank_b = rank_sum_b / nb;

  // Tie correction 1 - sum(t^3 - t) / (N^3 - N) over groups of tied values.
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double correction = 1.0 - tie_term / (n * n * n - n);
  if (correction <= 0.0) return out;  // every value tied

  const double h = 12.0 / (n * (n + 1.0)) *
                       (rank_sum_a * rank_sum_a / na + rank_sum_b * rank_sum_b / nb) -
                   3.0 * (n + 1.0);
  out.h = std::max(0.0, h / correction);
  out.p = chi_square_sf(out.h, 1.0);
  return out;
}

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean: empty sample");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::optional<double> sample_std(std::span<const double> v) {
  if (v.size() < 2) return std::nullopt;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::string_view verdict_symbol(Verdict v) {
  switch (v) {
    case Verdict::kMultitaskingBetter:
      return "+*";
    case Verdict::kClassicalBetter:
      return "-*";
    case Verdict::kNoDifference:
      return "=";
    case Verdict::kInsufficientData:
      return "";
  }
  return "";
}

ComparisonResult compare(std::span<const double> classical, std::span<const double> multitask) {
  ComparisonResult out;
  out.mean_c = mean(classical);
  out.mean_m = mean(multitask);
  out.std_c = sample_std(classical);
  out.std_m = sample_std(multitask);
  if (classical.size() < 2 || multitask.size() < 2) return out;

  const KruskalWallis kw = kruskal_wallis(classical, multitask);
  out.h = kw.h;
  out.p = kw.p;
  if (kw.p > kSignificanceLevel || kw.mean_rank_a == kw.mean_rank_b) {
    out.verdict = Verdict::kNoDifference;
  } else {
    out.verdict = kw.mean_rank_b > kw.mean_rank_a ? Verdict::kMultitaskingBetter
                                                  : Verdict::kClassicalBetter;
  }
  return out;
}

}  // namespace mtsubmod::stats
