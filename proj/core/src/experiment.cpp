#include "lcasched/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "lcasched/error.hpp"
#include "lcasched/evaluator.hpp"
#include "lcasched/rng.hpp"
#include "lcasched/sched_domain.hpp"

namespace lcasched {

Algorithm parse_algorithm(std::string_view text) {
  if (text == "lca") return Algorithm::lca;
  if (text == "fcfs") return Algorithm::fcfs;
  if (text == "ljf") return Algorithm::ljf;
  throw InvalidParameter("unknown algorithm '" + std::string(text) + "'");
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::lca: return "lca";
    case Algorithm::fcfs: return "fcfs";
    case Algorithm::ljf: return "ljf";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (vm_counts.empty()) throw InvalidParameter("at least one VM count is required");
  for (auto m : vm_counts) {
    if (m < 1) throw InvalidParameter("VM counts must be >= 1");
  }
  if (algorithms.empty()) throw InvalidParameter("at least one algorithm is required");
  if (repetitions < 1) throw InvalidParameter("repetitions must be >= 1");
  if (jobs) {
    validate_jobs(*jobs);
  } else {
    workload.validate();
  }
  FleetSpec{1, vm_speeds}.validate();
  weights.validate();
  if (std::find(algorithms.begin(), algorithms.end(), Algorithm::lca) != algorithms.end()) {
    lca.validate();
    if (lca.max_evaluations && *lca.max_evaluations < static_cast<std::uint64_t>(lca.league_size)) {
      throw InvalidParameter("evaluation budget is smaller than the league size");
    }
  }
}

bool ResultRow::same_result(const ResultRow& other) const {
  return algorithm == other.algorithm && num_vms == other.num_vms && seed == other.seed &&
         metrics == other.metrics && objective_value == other.objective_value &&
         evaluations == other.evaluations;
}

CellInstance build_instance(const ExperimentConfig& config, std::uint64_t num_vms,
                            std::uint64_t seed) {
  CellInstance instance;
  if (config.jobs) {
    instance.jobs = *config.jobs;
  } else {
    WorkloadSpec spec = config.workload;
    spec.seed = seed;
    instance.jobs = generate_workload(spec);
  }
  FleetSpec fleet;
  fleet.vm_count = num_vms;
  fleet.speeds = config.vm_speeds;
  fleet.seed = derive_seed(seed, 2);
  instance.vms = generate_fleet(fleet);
  return instance;
}

ResultRow run_on_instance(const ExperimentConfig& config, Algorithm algorithm,
                          const CellInstance& instance, std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  const ScheduleEvaluator evaluator(instance.jobs, instance.vms);

  ResultRow row;
  row.algorithm = algorithm;
  row.num_vms = instance.vms.size();
  row.seed = seed;
  switch (algorithm) {
    case Algorithm::fcfs: {
      const auto plan = fcfs_schedule(instance.jobs, instance.vms);
      row.metrics = evaluator.metrics(plan.assignment.vm_of, plan.service_order);
      break;
    }
    case Algorithm::ljf: {
      const auto plan = ljf_schedule(instance.jobs, instance.vms, config.ljf_mode);
      row.metrics = evaluator.metrics(plan.assignment.vm_of, plan.service_order);
      break;
    }
    case Algorithm::lca: {
      lca::LcaParams params = config.lca;
      params.seed = derive_seed(seed, 1);
      const auto objective = make_objective(instance.jobs, instance.vms, config.weights);
      const auto domain = random_key_domain(instance.jobs.size(), instance.vms.size());
      const auto result = lca::optimize(objective, domain, params);
      const auto assignment = decode_random_key(result.best, instance.vms.size());
      row.metrics = evaluator.metrics(assignment.vm_of);
      row.evaluations = result.evaluations;
      break;
    }
  }
  row.objective_value = weighted(config.weights, row.metrics);
  if (config.timing) {
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
                      .count();
  }
  return row;
}

ResultRow run_cell(const ExperimentConfig& config, Algorithm algorithm, std::uint64_t num_vms,
                   std::uint64_t seed) {
  config.validate();
  return run_on_instance(config, algorithm, build_instance(config, num_vms, seed), seed);
}

namespace {

bool row_before(const ResultRow& a, const ResultRow& b) {
  return std::forward_as_tuple(to_string(a.algorithm), a.num_vms, a.seed) <
         std::forward_as_tuple(to_string(b.algorithm), b.num_vms, b.seed);
}

}  // namespace

std::vector<ResultRow> run_sweep(const ExperimentConfig& config) {
  config.validate();

  // One task per (vm count, seed); all algorithms share that task's instance.
  struct Task {
    std::uint64_t num_vms;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (auto m : config.vm_counts) {
    for (std::uint64_t r = 0; r < config.repetitions; ++r) tasks.push_back({m, config.base_seed + r});
  }

  const std::size_t per_task = config.algorithms.size();
  std::vector<ResultRow> rows(tasks.size() * per_task);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      try {
        const auto instance = build_instance(config, tasks[t].num_vms, tasks[t].seed);
        for (std::size_t a = 0; a < per_task; ++a) {
          rows[t * per_task + a] =
              run_on_instance(config, config.algorithms[a], instance, tasks[t].seed);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(rows.begin(), rows.end(), row_before);
  return rows;
}

std::vector<SummaryRow> summarize(std::span<const ResultRow> rows) {
  using Key = std::tuple<std::string_view, std::uint64_t>;
  std::map<Key, std::vector<const ResultRow*>> groups;
  std::map<Key, Algorithm> algorithms;
  for (const auto& row : rows) {
    Key key{to_string(row.algorithm), row.num_vms};
    groups[key].push_back(&row);
    algorithms[key] = row.algorithm;
  }

  using Getter = double (*)(const ResultRow&);
  const std::array<std::pair<const char*, Getter>, 4> metrics{{
      {"makespan", [](const ResultRow& r) { return r.metrics.makespan; }},
      {"avg_completion", [](const ResultRow& r) { return r.metrics.avg_completion; }},
      {"avg_response", [](const ResultRow& r) { return r.metrics.avg_response; }},
      {"objective_value", [](const ResultRow& r) { return r.objective_value; }},
  }};

  std::vector<SummaryRow> out;
  for (const auto& [key, members] : groups) {
    for (const auto& [name, get] : metrics) {
      double sum = 0.0;
      for (const auto* r : members) sum += get(*r);
      const double mean = sum / static_cast<double>(members.size());
      double sq = 0.0;
      for (const auto* r : members) sq += (get(*r) - mean) * (get(*r) - mean);
      const double sd =
          members.size() > 1 ? std::sqrt(sq / static_cast<double>(members.size() - 1)) : 0.0;
      out.push_back({algorithms[key], std::get<1>(key), name, mean, sd, members.size()});
    }
  }
  return out;
}

std::string format_real(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_results_csv(std::span<const ResultRow> rows, std::ostream& out) {
  out << kResultsHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.algorithm) << ',' << r.num_vms << ',' << r.seed << ','
        << format_real(r.metrics.makespan) << ',' << format_real(r.metrics.avg_completion) << ','
        << format_real(r.metrics.avg_response) << ',' << format_real(r.objective_value) << ','
        << r.evaluations << ',' << format_real(r.wall_ms) << '\n';
  }
}

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.algorithm) << ',' << r.num_vms << ',' << r.metric << ','
        << format_real(r.mean) << ',' << format_real(r.stddev) << ',' << r.count << '\n';
  }
}

}  // namespace lcasched
