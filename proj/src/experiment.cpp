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

#include "mtsubmod/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "mtsubmod/bitops.hpp"
#include "mtsubmod/rng.hpp"

namespace mtsubmod::experiment {
namespace {

constexpr std::uint64_t kWeightsTag = 0x7765696768747300ULL;   // "weights"
constexpr std::uint64_t kRunTag = 0x72756e0000000000ULL;       // "run"
constexpr std::uint64_t kFixedWeightsTag = 0xfeedfacecafebeefULL;
constexpr std::uint64_t kMultitaskSentinel = 0xffffffffffffffffULL;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

template <class Int>
Int parse_int(std::string_view token, const std::string& source, std::size_t line) {
  Int value{};
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(source, line, "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

bool parse_bool(std::string_view v, const std::string& source, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError(source, line, "expected true/false, got '" + std::string(v) + "'");
}

std::string_view format_name(GraphFormat f) {
  switch (f) {
    case GraphFormat::kAuto:
      return "auto";
    case GraphFormat::kEdgeList:
      return "edge-list";
    case GraphFormat::kMatrixMarket:
      return "matrix-market";
  }
  return "auto";
}

std::string_view modes_name(ModeSelection m) {
  switch (m) {
    case ModeSelection::kClassical:
      return "classical";
    case ModeSelection::kMultitasking:
      return "multitasking";
    case ModeSelection::kBoth:
      return "both";
  }
  return "both";
}

std::uint64_t bounds_hash(std::span<const std::int64_t> bounds) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::int64_t b : bounds) h = derive_seed({h, static_cast<std::uint64_t>(b)});
  return h;
}

std::string format_number(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string format_optional(const char* fmt, const std::optional<double>& v) {
  return v ? format_number(fmt, *v) : std::string();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (graphs.empty()) throw std::invalid_argument("config: at least one graph is required");
  if (bounds.empty()) throw std::invalid_argument("config: at least one bound is required");
  for (std::int64_t b : bounds) {
    if (b <= 0) throw std::invalid_argument("config: bounds must be positive");
  }
  if (checkpoints.empty()) throw std::invalid_argument("config: at least one checkpoint is required");
  if (repetitions == 0) throw std::invalid_argument("config: repetitions must be at least 1");
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir,
                              const std::string& source) {
  ExperimentConfig cfg;
  bool saw_checkpoints = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    try {
      if (key == "graph") {
        GraphSource g;
        std::string path_part = value;
        if (const auto pos = value.find(" label="); pos != std::string::npos) {
          path_part = trim(std::string_view(value).substr(0, pos));
          g.label = trim(std::string_view(value).substr(pos + 7));
        }
        g.path = std::filesystem::path(path_part);
        if (g.path.is_relative()) g.path = base_dir / g.path;
        if (g.label.empty()) g.label = g.path.stem().string();
        cfg.graphs.push_back(std::move(g));
      } else if (key == "format") {
        cfg.format = parse_graph_format(value);
      } else if (key == "regime") {
        cfg.regime = parse_cost_regime(value);
      } else if (key == "bounds") {
        cfg.bounds.clear();
        for (const auto& t : split_list(value)) cfg.bounds.push_back(parse_int<std::int64_t>(t, source, line_no));
      } else if (key == "checkpoints") {
        if (!saw_checkpoints) cfg.checkpoints.clear();
        saw_checkpoints = true;
        for (const auto& t : split_list(value)) {
          cfg.checkpoints.push_back(parse_int<std::uint64_t>(t, source, line_no));
        }
      } else if (key == "repetitions") {
        cfg.repetitions = parse_int<std::size_t>(value, source, line_no);
      } else if (key == "seed") {
        cfg.master_seed = parse_int<std::uint64_t>(value, source, line_no);
      } else if (key == "modes") {
        if (value == "classical") {
          cfg.modes = ModeSelection::kClassical;
        } else if (value == "multitasking") {
          cfg.modes = ModeSelection::kMultitasking;
        } else if (value == "both") {
          cfg.modes = ModeSelection::kBoth;
        } else {
          throw ParseError(source, line_no, "modes must be classical, multitasking or both");
        }
      } else if (key == "resample_weights") {
        cfg.resample_weights = parse_bool(value, source, line_no);
      } else if (key == "init") {
        if (value == "all-zeros") {
          cfg.init = InitMode::kAllZeros;
        } else if (value == "random-uniform") {
          cfg.init = InitMode::kRandomUniform;
        } else {
          throw ParseError(source, line_no, "init must be all-zeros or random-uniform");
        }
      } else {
        throw ParseError(source, line_no, "unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  std::sort(cfg.checkpoints.begin(), cfg.checkpoints.end());
  cfg.checkpoints.erase(std::unique(cfg.checkpoints.begin(), cfg.checkpoints.end()),
                        cfg.checkpoints.end());
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, line_no, e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open config");
  return parse_config(in, path.parent_path(), path.string());
}

std::string format_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  for (const auto& g : cfg.graphs) out << "graph = " << g.path.string() << " label=" << g.label << '\n';
  out << "format = " << format_name(cfg.format) << '\n';
  out << "regime = " << to_string(cfg.regime) << '\n';
  out << "bounds =";
  for (auto b : cfg.bounds) out << ' ' << b;
  out << "\ncheckpoints =";
  for (auto c : cfg.checkpoints) out << ' ' << c;
  out << "\nrepetitions = " << cfg.repetitions << '\n';
  out << "seed = " << cfg.master_seed << '\n';
  out << "modes = " << modes_name(cfg.modes) << '\n';
  out << "resample_weights = " << (cfg.resample_weights ? "true" : "false") << '\n';
  out << "init = " << (cfg.init == InitMode::kAllZeros ? "all-zeros" : "random-uniform") << '\n';
  return out.str();
}

std::string_view to_string(RunMode mode) {
  return mode == RunMode::kClassical ? "classical" : "multitasking";
}

std::uint64_t weight_seed(const ExperimentConfig& cfg, const std::string& graph_label,
                          std::size_t repetition, std::size_t problem) {
  const std::uint64_t rep_part = cfg.resample_weights ? repetition : kFixedWeightsTag;
  return derive_seed({cfg.master_seed, hash_label(graph_label),
                      static_cast<std::uint64_t>(cfg.regime), rep_part, problem, kWeightsTag});
}

std::uint64_t run_seed(const ExperimentConfig& cfg, const std::string& graph_label,
                       std::size_t repetition, std::optional<std::size_t> problem) {
  return derive_seed({cfg.master_seed, hash_label(graph_label),
                      static_cast<std::uint64_t>(cfg.regime), bounds_hash(cfg.bounds), repetition,
                      problem ? *problem : kMultitaskSentinel, kRunTag});
}

Constraint problem_constraint(const ExperimentConfig& cfg, const Graph& g,
                              const std::string& graph_label, std::size_t repetition,
                              std::size_t problem) {
  return build_constraint(g, cfg.regime, cfg.bounds.at(problem),
                          weight_seed(cfg, graph_label, repetition, problem));
}

namespace {

struct Job {
  RunMode mode;
  std::size_t repetition;
  std::size_t problem;  // classical only
};

std::vector<RawRecord> execute(const Job& job, const ExperimentConfig& cfg, const Graph& g,
                               const std::shared_ptr<const CoverageObjective>& objective,
                               const std::string& label) {
  const std::size_t k = cfg.bounds.size();
  const std::uint64_t g_max = cfg.checkpoints.back();
  std::vector<RawRecord> out;
  auto make_record = [&](std::size_t problem, std::uint64_t gens, const CheckpointRecord& rec,
                         std::size_t best_index) {
    RawRecord r;
    r.graph = label;
    r.regime = cfg.regime;
    r.mode = job.mode;
    r.repetition = job.repetition;
    r.problem = problem;
    r.bound = cfg.bounds[problem];
    r.generations = gens;
    if (const auto& best = rec.best[best_index]) {
      r.best_f = best->f;
      r.cost = best->cost;
    }
    r.archive_size = rec.archive_size;
    return r;
  };

  if (job.mode == RunMode::kClassical) {
    ProblemSet ps(objective, {problem_constraint(cfg, g, label, job.repetition, job.problem)},
                  ProblemMode::kClassicalSingle);
    RunConfig rc{cfg.init, g_max, cfg.checkpoints,
                 run_seed(cfg, label, job.repetition, job.problem)};
    const RunResult result = run(ps, rc);
    for (std::size_t c = 0; c < cfg.checkpoints.size(); ++c) {
      out.push_back(make_record(job.problem, cfg.checkpoints[c], result.trace.records[c], 0));
    }
  } else {
    std::vector<Constraint> constraints;
    for (std::size_t i = 0; i < k; ++i) {
      constraints.push_back(problem_constraint(cfg, g, label, job.repetition, i));
    }
    ProblemSet ps(objective, std::move(constraints), ProblemMode::kMultitasking);
    std::vector<std::uint64_t> scaled;
    for (std::uint64_t c : cfg.checkpoints) scaled.push_back(c * k);
    RunConfig rc{cfg.init, g_max * k, scaled, run_seed(cfg, label, job.repetition, std::nullopt)};
    const RunResult result = run(ps, rc);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t c = 0; c < cfg.checkpoints.size(); ++c) {
        out.push_back(make_record(i, cfg.checkpoints[c], result.trace.records[c], i));
      }
    }
  }
  return out;
}

auto canonical_key(const RawRecord& r) {
  return std::make_tuple(r.graph, r.problem, r.generations, static_cast<int>(r.mode), r.repetition);
}

}  // namespace

std::vector<RawRecord> run_graph(const ExperimentConfig& cfg, const Graph& g,
                                 const std::string& label, const HarnessOptions& options) {
  cfg.validate();
  auto objective = std::make_shared<const CoverageObjective>(g);
  std::vector<Job> jobs;
  for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
    if (cfg.modes != ModeSelection::kMultitasking) {
      for (std::size_t i = 0; i < cfg.bounds.size(); ++i) jobs.push_back({RunMode::kClassical, rep, i});
    }
    if (cfg.modes != ModeSelection::kClassical) jobs.push_back({RunMode::kMultitasking, rep, 0});
  }

  std::vector<std::vector<RawRecord>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= jobs.size() || failed.load()) return;
      try {
        results[idx] = execute(jobs[idx], cfg, g, objective, label);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        failed = true;
        return;
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (options.progress) {
        std::lock_guard lock(mu);
        options.progress(finished, jobs.size());
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.workers, jobs.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RawRecord> raw;
  for (auto& r : results) raw.insert(raw.end(), r.begin(), r.end());
  std::sort(raw.begin(), raw.end(),
            [](const RawRecord& a, const RawRecord& b) { return canonical_key(a) < canonical_key(b); });
  return raw;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const HarnessOptions& options) {
  cfg.validate();
  ExperimentResult result;
  for (const GraphSource& src : cfg.graphs) {
    const Graph g = parse_graph(src.path, cfg.format);
    auto raw = run_graph(cfg, g, src.label, options);
    result.raw.insert(result.raw.end(), raw.begin(), raw.end());
  }
  std::stable_sort(result.raw.begin(), result.raw.end(), [](const RawRecord& a, const RawRecord& b) {
    return canonical_key(a) < canonical_key(b);
  });
  result.rows = aggregate(result.raw);
  return result;
}

std::vector<ResultRow> aggregate(std::span<const RawRecord> raw) {
  struct Samples {
    std::int64_t bound = 0;
    std::vector<double> classical, multitask;
  };
  using Key = std::tuple<std::string, int, std::size_t, std::uint64_t>;
  std::map<Key, Samples> groups;
  for (const RawRecord& r : raw) {
    auto& s = groups[{r.graph, static_cast<int>(r.regime), r.problem, r.generations}];
    s.bound = r.bound;
    if (!r.best_f) continue;
    (r.mode == RunMode::kClassical ? s.classical : s.multitask).push_back(*r.best_f);
  }
  std::vector<ResultRow> rows;
  for (const auto& [key, s] : groups) {
    ResultRow row;
    row.graph = std::get<0>(key);
    row.regime = static_cast<CostRegime>(std::get<1>(key));
    row.problem = std::get<2>(key);
    row.generations = std::get<3>(key);
    row.bound = s.bound;
    if (!s.classical.empty()) {
      row.mean_c = stats::mean(s.classical);
      row.std_c = stats::sample_std(s.classical);
    }
    if (!s.multitask.empty()) {
      row.mean_m = stats::mean(s.multitask);
      row.std_m = stats::sample_std(s.multitask);
    }
    if (!s.classical.empty() && !s.multitask.empty()) {
      const auto cmp = stats::compare(s.classical, s.multitask);
      row.h = cmp.h;
      row.p = cmp.p;
      row.verdict = cmp.verdict;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

constexpr std::string_view kRawHeader =
    "graph,regime,mode,repetition,problem,bound,generations,best_f,cost,archive_size";
constexpr std::string_view kResultsHeader =
    "graph,regime,bound,generations,mean_classical,std_classical,mean_multitask,std_multitask,H,p,"
    "verdict";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  out.push_back(std::move(field));
  return out;
}

}  // namespace

void write_raw_csv(std::ostream& out, std::span<const RawRecord> raw) {
  out << kRawHeader << '\n';
  for (const RawRecord& r : raw) {
    out << r.graph << ',' << to_string(r.regime) << ',' << to_string(r.mode) << ',' << r.repetition
        << ',' << r.problem << ',' << r.bound << ',' << r.generations << ','
        << format_optional("%.12g", r.best_f) << ',';
    if (r.cost) out << *r.cost;
    out << ',' << r.archive_size << '\n';
  }
}

std::vector<RawRecord> read_raw_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || trim(line) != kRawHeader) {
    throw ParseError(source, 1, "missing raw_runs.csv header");
  }
  std::vector<RawRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 10) throw ParseError(source, line_no, "expected 10 fields");
    RawRecord r;
    r.graph = f[0];
    try {
      r.regime = parse_cost_regime(f[1]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (f[2] == "classical") {
      r.mode = RunMode::kClassical;
    } else if (f[2] == "multitasking") {
      r.mode = RunMode::kMultitasking;
    } else {
      throw ParseError(source, line_no, "unknown mode '" + f[2] + "'");
    }
    r.repetition = parse_int<std::size_t>(f[3], source, line_no);
    r.problem = parse_int<std::size_t>(f[4], source, line_no);
    r.bound = parse_int<std::int64_t>(f[5], source, line_no);
    r.generations = parse_int<std::uint64_t>(f[6], source, line_no);
    if (!f[7].empty()) {
      try {
        std::size_t used = 0;
        r.best_f = std::stod(f[7], &used);
        if (used != f[7].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "bad best_f '" + f[7] + "'");
      }
    }
    if (!f[8].empty()) r.cost = parse_int<std::int64_t>(f[8], source, line_no);
    r.archive_size = parse_int<std::size_t>(f[9], source, line_no);
    out.push_back(std::move(r));
  }
  return out;
}

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << kResultsHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.graph << ',' << to_string(r.regime) << ',' << r.bound << ',' << r.generations << ','
        << format_optional("%.1f", r.mean_c) << ',' << format_optional("%.1f", r.std_c) << ','
        << format_optional("%.1f", r.mean_m) << ',' << format_optional("%.1f", r.std_m) << ','
        << format_optional("%.6g", r.h) << ',' << format_optional("%.6g", r.p) << ','
        << stats::verdict_symbol(r.verdict) << '\n';
  }
}

void write_meta(std::ostream& out, const ExperimentConfig& cfg) {
  out << "generator: " << kGeneratorIdentity << '\n';
  out << "seed derivation: derive_seed(SplitMix64 chain) over\n"
         "  weights   = (master, fnv1a(graph label), regime, repetition or fixed tag, problem, "
         "weights tag)\n"
         "  classical = (master, fnv1a(graph label), regime, hash(bounds), repetition, problem, run "
         "tag)\n"
         "  multitask = (master, fnv1a(graph label), regime, hash(bounds), repetition, 2^64-1, run "
         "tag)\n";
  out << "weights: random-linear weights are ceil(u), u uniform on [50,150), bound scaled by "
      << kRandomLinearScale << "; sampled independently per problem; "
      << (cfg.resample_weights ? "resampled every repetition" : "fixed across repetitions") << '\n';
  out << "degree-linear: weight deg(v), nominal bound; isolated vertices cost 0\n";
  out << "costs: raw_runs.csv reports scaled integer costs; bound columns are nominal\n";
  out << "budget: classical runs G_max evaluations per problem; multitasking runs k*G_max, read "
         "at k*G\n";
  out << "std: sample standard deviation (n-1)\n";
  out << "verdict: Kruskal-Wallis, p <= " << stats::kSignificanceLevel
      << ", direction by mean rank (+* multitasking better, -* classical better)\n";
  out << "bit kernels: " << bitops::active_kernels().name << '\n';
  out << "config:\n" << format_config(cfg);
}

void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                   const ExperimentResult& result) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "raw_runs.csv");
    write_raw_csv(out, result.raw);
  }
  {
    std::ofstream out(dir / "results.csv");
    write_results_csv(out, result.rows);
  }
  {
    std::ofstream out(dir / "meta.txt");
    write_meta(out, cfg);
  }
}

}  // namespace mtsubmod::experiment
