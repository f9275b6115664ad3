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

#include "mtsubmod/gsemo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mtsubmod {

ProblemSet::ProblemSet(std::shared_ptr<const SubmodularFunction> objective,
                       std::vector<Constraint> constraints, ProblemMode mode)
    : objective_(std::move(objective)), constraints_(std::move(constraints)), mode_(mode) {
  if (!objective_) throw ContractViolation("ProblemSet: missing objective");
  if (constraints_.empty()) throw ContractViolation("ProblemSet: need at least one constraint");
  if (mode_ == ProblemMode::kClassicalSingle && constraints_.size() != 1) {
    throw ContractViolation("ProblemSet: classical mode takes exactly one constraint");
  }
  for (const Constraint& c : constraints_) {
    if (c.size() != objective_->ground_size()) {
      throw ContractViolation("ProblemSet: constraint size differs from the ground set");
    }
  }
}

bool ProblemSet::all_uniform() const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [](const Constraint& c) { return c.is_uniform(); });
}

namespace {

ObjectiveVector assemble(const ProblemSet& ps, double f, std::span<const std::int64_t> costs) {
  bool feasible = false;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    feasible = feasible || costs[i] <= ps.constraint(i).bound();
  }
  std::vector<double> values(costs.size() + 1);
  values[0] = feasible ? f : kInfeasiblePrimary;
  for (std::size_t i = 0; i < costs.size(); ++i) values[i + 1] = -static_cast<double>(costs[i]);
  return ObjectiveVector(std::move(values));
}

std::vector<std::int64_t> all_costs(const ProblemSet& ps, const BitString& x) {
  std::vector<std::int64_t> costs;
  costs.reserve(ps.problem_count());
  for (const Constraint& c : ps.constraints()) costs.push_back(c.cost(x));
  return costs;
}

}  // namespace

ObjectiveVector fitness_classical(const ProblemSet& ps, const BitString& x) {
  if (ps.mode() != ProblemMode::kClassicalSingle) {
    throw ContractViolation("fitness_classical: problem set is not classical");
  }
  return assemble(ps, ps.objective().evaluate(x), all_costs(ps, x));
}

ObjectiveVector fitness_multitask(const ProblemSet& ps, const BitString& x) {
  if (ps.mode() != ProblemMode::kMultitasking) {
    throw ContractViolation("fitness_multitask: problem set is not multitasking");
  }
  return assemble(ps, ps.objective().evaluate(x), all_costs(ps, x));
}

ObjectiveVector fitness(const ProblemSet& ps, const BitString& x) {
  return ps.mode() == ProblemMode::kClassicalSingle ? fitness_classical(ps, x)
                                                    : fitness_multitask(ps, x);
}

void sample_flip_positions(std::size_t n, Xoshiro256& rng, std::vector<std::size_t>& out) {
  out.clear();
  if (n == 0) return;
  if (n == 1) {
    out.push_back(0);
    return;
  }
  const double log_keep = std::log1p(-1.0 / static_cast<double>(n));
  std::size_t pos = 0;
  for (;;) {
    const double u = 1.0 - rng.uniform01();  // (0, 1]
    const double gap = std::floor(std::log(u) / log_keep);
    if (gap >= static_cast<double>(n - pos)) return;
    pos += static_cast<std::size_t>(gap);
    out.push_back(pos);
    if (++pos >= n) return;
  }
}

namespace {

BitString initial_point(std::size_t n, InitMode init, Xoshiro256& rng) {
  BitString x(n);
  if (init == InitMode::kRandomUniform) {
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() >> 63) x.set(i);
    }
  }
  return x;
}

CheckpointRecord snapshot(const Population& p, const ProblemSet& ps, std::uint64_t iteration) {
  CheckpointRecord rec;
  rec.iteration = iteration;
  rec.archive_size = p.size();
  rec.best.reserve(ps.problem_count());
  for (std::size_t i = 0; i < ps.problem_count(); ++i) {
    if (auto best = extract_best(p, ps, i)) {
      rec.best.push_back(ProblemBest{best->f, best->cost});
    } else {
      rec.best.emplace_back(std::nullopt);
    }
  }
  return rec;
}

}  // namespace

RunResult run(const ProblemSet& ps, const RunConfig& cfg, const RunOptions& options) {
  std::vector<std::uint64_t> checkpoints = cfg.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (!checkpoints.empty() && checkpoints.back() > cfg.budget) {
    throw ContractViolation("run: checkpoint beyond budget");
  }

  const std::size_t n = ps.ground_size();
  const std::size_t k = ps.problem_count();
  const SubmodularFunction& f = ps.objective();
  std::optional<std::size_t> size_bound;
  if (options.check_population_bound && ps.all_uniform()) {
    size_bound = population_bound(ps.constraints(), n);
  }

  Xoshiro256 rng(cfg.seed);
  RunResult result;
  Population& pop = result.population;

  {
    BitString x0 = initial_point(n, cfg.init, rng);
    std::vector<std::uint64_t> state;
    const double fx = f.evaluate_with_state(x0, state);
    ObjectiveVector g = assemble(ps, fx, all_costs(ps, x0));
    pop.insert(Member{std::move(x0), std::move(g), std::move(state)});
  }

  auto next_checkpoint = checkpoints.begin();
  auto record_if_due = [&](std::uint64_t t) {
    while (next_checkpoint != checkpoints.end() && *next_checkpoint == t) {
      result.trace.records.push_back(snapshot(pop, ps, t));
      ++next_checkpoint;
    }
  };
  record_if_due(0);

  std::vector<std::size_t> flips;
  std::vector<std::int64_t> costs(k);
  std::vector<std::uint64_t> child_state;
  for (std::uint64_t t = 1; t <= cfg.budget; ++t) {
    const Member& parent = pop[rng.below(pop.size())];
    sample_flip_positions(n, rng, flips);

    BitString child = parent.x;
    for (std::size_t i = 0; i < k; ++i) costs[i] = static_cast<std::int64_t>(parent.g.cost(i));
    for (std::size_t j : flips) {
      child.flip(j);
      const bool added = child.test(j);
      for (std::size_t i = 0; i < k; ++i) {
        const std::int64_t w = ps.constraint(i).weights()[j];
        costs[i] += added ? w : -w;
      }
    }
    const double fy = f.evaluate_offspring(child, flips, parent.eval_state, child_state);
    ObjectiveVector gy = assemble(ps, fy, costs);
    pop.insert(Member{std::move(child), std::move(gy), std::move(child_state)});
    child_state = {};

    if (size_bound && pop.size() > *size_bound) {
      throw InvariantViolation("archive size " + std::to_string(pop.size()) +
                               " exceeds bound " + std::to_string(*size_bound) + " at iteration " +
                               std::to_string(t));
    }
    ++result.evaluations;
    if (options.observer) options.observer(t, pop);
    record_if_due(t);
  }
  return result;
}

std::optional<BestSolution> extract_best(const Population& p, const ProblemSet& ps,
                                         std::size_t problem) {
  if (problem >= ps.problem_count()) throw ContractViolation("extract_best: problem index out of range");
  const Constraint& c = ps.constraint(problem);
  const Member* best = nullptr;
  std::int64_t best_cost = 0;
  std::size_t best_ones = 0;
  for (const Member& m : p.members()) {
    const auto cost = static_cast<std::int64_t>(m.g.cost(problem));
    if (cost > c.bound()) continue;
    const std::size_t ones = m.x.ones_count();
    bool better = best == nullptr;
    if (!better) {
      if (m.g.primary() != best->g.primary()) {
        better = m.g.primary() > best->g.primary();
      } else if (cost != best_cost) {
        better = cost < best_cost;
      } else if (ones != best_ones) {
        better = ones < best_ones;
      } else {
        better = m.x < best->x;
      }
    }
    if (better) {
      best = &m;
      best_cost = cost;
      best_ones = ones;
    }
  }
  if (best == nullptr) return std::nullopt;
  return BestSolution{best->x, best->g.primary(), best_cost};
}

}  // namespace mtsubmod
