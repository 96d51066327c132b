// lcasched: command-line harness for the LCA job scheduler.
//
//   lcasched generate --out DIR        write DIR/jobs.csv and DIR/vms.csv
//   lcasched run --algorithms lca ...  one (algorithm, vm count, seed) cell
//   lcasched sweep --out results.csv   full grid, plus results_summary.csv
//   lcasched oracle --num-jobs 6 ...   exhaustive optimum on a tiny instance
//
// Exit codes: 0 success, 2 invalid configuration, 3 I/O error.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lcasched/error.hpp"
#include "lcasched/evaluator.hpp"
#include "lcasched/experiment.hpp"
#include "lcasched/workload.hpp"

namespace {

using namespace lcasched;

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Options {
  std::string jobs_file;
  std::string vms_file;
  std::uint64_t num_jobs = 500;
  std::uint64_t len_min = 1000;
  std::uint64_t len_max = 20000;
  double arrival_rate = 0.0;
  std::vector<std::uint64_t> vm_counts{10, 30, 50, 70, 90, 110, 130};
  std::vector<double> vm_speeds{500, 1000, 1500, 2000, 2500};
  std::vector<std::string> algorithms{"lca", "fcfs", "ljf"};
  std::uint64_t reps = 10;
  std::uint64_t seed = 1;
  int league_size = 6;
  int seasons = 660;
  double pc = 0.5;
  double psi1 = 1.0;
  double psi2 = 1.0;
  std::uint64_t max_evals = 0;
  std::vector<double> weights{0.0, 1.0, 0.0};
  std::string ljf_mode = "longest";
  std::string out;
  bool no_timing = false;
  unsigned threads = 1;
};

void add_workload_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--jobs-file", o.jobs_file, "Jobs CSV (job_id,arrival_time,length_mi)");
  cmd.add_option("--num-jobs", o.num_jobs, "Generated job count")->capture_default_str();
  cmd.add_option("--len-min", o.len_min, "Minimum job length (MI)")->capture_default_str();
  cmd.add_option("--len-max", o.len_max, "Maximum job length (MI)")->capture_default_str();
  cmd.add_option("--arrival-rate", o.arrival_rate,
                 "Poisson arrival rate in jobs/s; 0 submits every job at time 0")
      ->capture_default_str();
  cmd.add_option("--vm-speeds", o.vm_speeds, "VM speeds (MIPS), cycled across the fleet")
      ->delimiter(',')
      ->capture_default_str();
  cmd.add_option("--seed", o.seed, "Base seed")->capture_default_str();
}

void add_algorithm_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--league-size", o.league_size, "LCA league size (even, >= 4)")->capture_default_str();
  cmd.add_option("--seasons", o.seasons, "LCA seasons")->capture_default_str();
  cmd.add_option("--pc", o.pc, "LCA change probability")->capture_default_str();
  cmd.add_option("--psi1", o.psi1, "LCA retreat coefficient")->capture_default_str();
  cmd.add_option("--psi2", o.psi2, "LCA approach coefficient")->capture_default_str();
  cmd.add_option("--max-evals", o.max_evals, "LCA evaluation budget (0 = unlimited)")
      ->capture_default_str();
  cmd.add_option("--weights", o.weights, "Objective weights w_mk,w_ct,w_rs")
      ->delimiter(',')
      ->expected(3)
      ->capture_default_str();
  cmd.add_option("--ljf-mode", o.ljf_mode, "LJF dispatch order")
      ->check(CLI::IsMember({"longest", "last-arrival"}))
      ->capture_default_str();
  cmd.add_option("--algorithms", o.algorithms, "Algorithms: lca,fcfs,ljf")
      ->delimiter(',')
      ->check(CLI::IsMember({"lca", "fcfs", "ljf"}))
      ->capture_default_str();
}

ExperimentConfig make_config(const Options& o) {
  ExperimentConfig config;
  if (!o.jobs_file.empty()) config.jobs = read_jobs_file(o.jobs_file);
  config.workload.job_count = o.num_jobs;
  config.workload.len_min = o.len_min;
  config.workload.len_max = o.len_max;
  if (o.arrival_rate > 0.0) {
    config.workload.arrivals = ArrivalModel::poisson;
    config.workload.arrival_rate = o.arrival_rate;
  } else if (o.arrival_rate < 0.0) {
    throw InvalidParameter("arrival rate must be >= 0");
  }
  config.vm_speeds = o.vm_speeds;
  config.vm_counts = o.vm_counts;
  config.algorithms.clear();
  for (const auto& a : o.algorithms) config.algorithms.push_back(parse_algorithm(a));
  config.repetitions = o.reps;
  config.base_seed = o.seed;
  config.lca.league_size = o.league_size;
  config.lca.seasons = o.seasons;
  config.lca.change_prob = o.pc;
  config.lca.retreat_coeff = o.psi1;
  config.lca.approach_coeff = o.psi2;
  if (o.max_evals > 0) config.lca.max_evaluations = o.max_evals;
  if (o.weights.size() != 3) throw InvalidParameter("--weights takes exactly three values");
  config.weights = {o.weights[0], o.weights[1], o.weights[2]};
  config.ljf_mode = parse_ljf_mode(o.ljf_mode);
  config.timing = !o.no_timing;
  config.threads = o.threads;
  config.validate();
  return config;
}

/// Writes to `path`, or stdout when it is empty.
template <typename Write>
void emit(const std::string& path, Write&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::filesystem::path summary_path(const std::filesystem::path& results) {
  auto p = results;
  p.replace_filename(results.stem().string() + "_summary.csv");
  return p;
}

void print_summary_table(std::span<const SummaryRow> summary, std::ostream& out) {
  out << std::left << std::setw(6) << "alg" << std::right << std::setw(6) << "vms"
      << std::setw(16) << "makespan" << std::setw(16) << "avg_completion" << std::setw(16)
      << "avg_response\n";
  for (std::size_t i = 0; i + 3 < summary.size() + 1; i += 4) {
    out << std::left << std::setw(6) << to_string(summary[i].algorithm) << std::right
        << std::setw(6) << summary[i].num_vms << std::fixed << std::setprecision(3)
        << std::setw(16) << summary[i].mean << std::setw(16) << summary[i + 1].mean
        << std::setw(16) << summary[i + 2].mean << '\n';
  }
  out.unsetf(std::ios::fixed);
}

std::vector<Vm> single_fleet(const Options& o, const ExperimentConfig& config) {
  if (!o.vms_file.empty()) return read_vms_file(o.vms_file);
  if (config.vm_counts.size() != 1) throw InvalidParameter("give exactly one --vm-counts value");
  return build_instance(config, config.vm_counts.front(), config.base_seed).vms;
}

int cmd_generate(const Options& o) {
  WorkloadSpec spec;
  spec.job_count = o.num_jobs;
  spec.len_min = o.len_min;
  spec.len_max = o.len_max;
  spec.seed = o.seed;
  if (o.arrival_rate > 0.0) {
    spec.arrivals = ArrivalModel::poisson;
    spec.arrival_rate = o.arrival_rate;
  }
  if (o.vm_counts.size() != 1) throw InvalidParameter("give exactly one --vm-counts value");
  FleetSpec fleet;
  fleet.vm_count = o.vm_counts.front();
  fleet.speeds = o.vm_speeds;
  const auto jobs = generate_workload(spec);
  const auto vms = generate_fleet(fleet);

  const std::filesystem::path dir = o.out.empty() ? "." : o.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  write_jobs_file(jobs, dir / "jobs.csv");
  write_vms_file(vms, dir / "vms.csv");
  std::cerr << "wrote " << jobs.size() << " jobs and " << vms.size() << " VMs to " << dir << '\n';
  return 0;
}

int cmd_run(const Options& o) {
  const auto config = make_config(o);
  if (config.algorithms.size() != 1) throw InvalidParameter("run takes exactly one algorithm");
  CellInstance instance;
  instance.vms = single_fleet(o, config);
  instance.jobs = build_instance(config, 1, config.base_seed).jobs;
  const auto row = run_on_instance(config, config.algorithms.front(), instance, config.base_seed);
  const std::vector<ResultRow> rows{row};
  emit(o.out, [&](std::ostream& out) { write_results_csv(rows, out); });
  return 0;
}

int cmd_sweep(const Options& o) {
  const auto config = make_config(o);
  const auto rows = run_sweep(config);
  const auto summary = summarize(rows);
  emit(o.out, [&](std::ostream& out) { write_results_csv(rows, out); });
  if (!o.out.empty()) {
    emit(summary_path(o.out).string(), [&](std::ostream& out) { write_summary_csv(summary, out); });
  }
  print_summary_table(summary, std::cerr);
  return 0;
}

int cmd_oracle(const Options& o) {
  const auto config = make_config(o);
  CellInstance instance;
  instance.vms = single_fleet(o, config);
  instance.jobs = build_instance(config, 1, config.base_seed).jobs;
  const auto best = brute_force_optimal(instance.jobs, instance.vms, config.weights);

  emit(o.out, [&](std::ostream& out) {
    out << "algorithm,makespan,avg_completion,avg_response,objective_value,gap_pct\n";
    out << "oracle," << format_real(best.metrics.makespan) << ','
        << format_real(best.metrics.avg_completion) << ','
        << format_real(best.metrics.avg_response) << ',' << format_real(best.objective) << ",0\n";
    for (auto algorithm : config.algorithms) {
      const auto row = run_on_instance(config, algorithm, instance, config.base_seed);
      const double gap = best.objective > 0.0
                             ? 100.0 * (row.objective_value - best.objective) / best.objective
                             : 0.0;
      out << to_string(algorithm) << ',' << format_real(row.metrics.makespan) << ','
          << format_real(row.metrics.avg_completion) << ','
          << format_real(row.metrics.avg_response) << ',' << format_real(row.objective_value)
          << ',' << format_real(gap) << '\n';
    }
  });
  std::cerr << "optimal assignment:";
  for (auto v : best.assignment.vm_of) std::cerr << ' ' << v;
  std::cerr << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LCA job scheduler for simulated IaaS clouds"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "Write a workload and fleet as CSV");
  add_workload_flags(*generate, o);
  generate->add_option("--vm-counts", o.vm_counts, "Fleet size")->delimiter(',');
  generate->add_option("--out", o.out, "Output directory");

  auto* run = app.add_subcommand("run", "Run one algorithm on one instance");
  add_workload_flags(*run, o);
  add_algorithm_flags(*run, o);
  run->add_option("--vm-counts", o.vm_counts, "Fleet size")->delimiter(',');
  run->add_option("--vms-file", o.vms_file, "VMs CSV (vm_id,mips)");
  run->add_option("--out", o.out, "Results CSV (stdout if omitted)");
  run->add_flag("--no-timing", o.no_timing, "Write wall_ms as 0");

  auto* sweep = app.add_subcommand("sweep", "Run the algorithms x VM counts x repetitions grid");
  add_workload_flags(*sweep, o);
  add_algorithm_flags(*sweep, o);
  sweep->add_option("--vm-counts", o.vm_counts, "VM counts")->delimiter(',')->capture_default_str();
  sweep->add_option("--reps", o.reps, "Repetitions per cell")->capture_default_str();
  sweep->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
  sweep->add_option("--out", o.out, "Results CSV; the summary goes next to it");
  sweep->add_flag("--no-timing", o.no_timing, "Write wall_ms as 0");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum of a tiny instance vs. heuristics");
  add_workload_flags(*oracle, o);
  add_algorithm_flags(*oracle, o);
  oracle->add_option("--vm-counts", o.vm_counts, "Fleet size")->delimiter(',');
  oracle->add_option("--vms-file", o.vms_file, "VMs CSV (vm_id,mips)");
  oracle->add_option("--out", o.out, "Output CSV (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*generate) return cmd_generate(o);
    if (*run) return cmd_run(o);
    if (*sweep) return cmd_sweep(o);
    if (*oracle) return cmd_oracle(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
