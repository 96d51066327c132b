#pragma once

// Experiment grid: algorithms x VM counts x repetitions. Each cell is a pure
// function of (config, algorithm, vm count, seed); the sweep may run cells
// on several threads but always returns rows sorted by
// (algorithm name, num_vms, seed).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcasched/baselines.hpp"
#include "lcasched/lca.hpp"
#include "lcasched/types.hpp"
#include "lcasched/workload.hpp"

namespace lcasched {

enum class Algorithm { fcfs, lca, ljf };

Algorithm parse_algorithm(std::string_view text);
std::string_view to_string(Algorithm algorithm);

struct ExperimentConfig {
  /// Used when `jobs` is empty; its seed is replaced by each cell's seed.
  WorkloadSpec workload;
  /// Fixed job list (e.g. from a jobs CSV), shared by every cell.
  std::optional<std::vector<Job>> jobs;
  std::vector<double> vm_speeds{500, 1000, 1500, 2000, 2500};
  std::vector<std::uint64_t> vm_counts{10, 30, 50, 70, 90, 110, 130};
  std::vector<Algorithm> algorithms{Algorithm::lca, Algorithm::fcfs, Algorithm::ljf};
  std::uint64_t repetitions = 10;
  std::uint64_t base_seed = 1;
  lca::LcaParams lca;
  MetricWeights weights;
  LjfMode ljf_mode = LjfMode::longest;
  bool timing = true;
  unsigned threads = 1;

  void validate() const;
};

struct ResultRow {
  Algorithm algorithm = Algorithm::fcfs;
  std::uint64_t num_vms = 0;
  std::uint64_t seed = 0;
  ScheduleMetrics metrics;
  double objective_value = 0.0;
  std::uint64_t evaluations = 0;
  double wall_ms = 0.0;

  /// Equality on everything except wall_ms.
  bool same_result(const ResultRow& other) const;
};

/// Jobs and VMs a cell runs on.
struct CellInstance {
  std::vector<Job> jobs;
  std::vector<Vm> vms;
};

CellInstance build_instance(const ExperimentConfig& config, std::uint64_t num_vms,
                            std::uint64_t seed);

/// Runs one algorithm on a prepared instance. LCA draws from derive_seed(seed, 1).
ResultRow run_on_instance(const ExperimentConfig& config, Algorithm algorithm,
                          const CellInstance& instance, std::uint64_t seed);

ResultRow run_cell(const ExperimentConfig& config, Algorithm algorithm, std::uint64_t num_vms,
                   std::uint64_t seed);

std::vector<ResultRow> run_sweep(const ExperimentConfig& config);

struct SummaryRow {
  Algorithm algorithm = Algorithm::fcfs;
  std::uint64_t num_vms = 0;
  std::string metric;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single row
  std::uint64_t count = 0;
};

/// One row per (algorithm, num_vms, metric) for makespan, avg_completion,
/// avg_response and objective_value, in row order.
std::vector<SummaryRow> summarize(std::span<const ResultRow> rows);

inline constexpr std::string_view kResultsHeader =
    "algorithm,num_vms,seed,makespan,avg_completion,avg_response,objective_value,evaluations,wall_ms";
inline constexpr std::string_view kSummaryHeader = "algorithm,num_vms,metric,mean,stddev,reps";

void write_results_csv(std::span<const ResultRow> rows, std::ostream& out);
void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out);

/// Shortest decimal string that reads back to the same double.
std::string format_real(double value);

}  // namespace lcasched
