#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "lcasched/error.hpp"
#include "lcasched/evaluator.hpp"
#include "lcasched/experiment.hpp"

using namespace lcasched;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.workload.job_count = 20;
  c.vm_counts = {2, 5};
  c.repetitions = 3;
  c.lca.seasons = 30;
  c.timing = false;
  return c;
}

}  // namespace

TEST_CASE("run_cell: fcfs on the three-job instance") {
  ExperimentConfig c;
  c.jobs = std::vector<Job>{{0, 0, 10}, {1, 0, 20}, {2, 0, 30}};
  c.vm_speeds = {1, 2};
  const auto row = run_cell(c, Algorithm::fcfs, 2, 1);
  CHECK(row.metrics.makespan == 40.0);
  CHECK(row.metrics.avg_completion == 20.0);
  CHECK(row.objective_value == 20.0);
  CHECK(row.evaluations == 0);
  CHECK(row.num_vms == 2);
  const auto ljf = run_cell(c, Algorithm::ljf, 2, 1);
  CHECK(ljf.metrics.avg_completion == doctest::Approx(55.0 / 3.0));
}

TEST_CASE("run_cell: lca with an m^n budget lands near the optimum") {
  ExperimentConfig c;
  c.jobs = std::vector<Job>{{0, 0, 7}, {1, 0, 3}, {2, 0, 11}, {3, 0, 5}, {4, 0, 9}, {5, 0, 2}};
  c.vm_speeds = {1, 2, 3};
  c.lca.max_evaluations = 729;  // 3^6
  const auto row = run_cell(c, Algorithm::lca, 3, 4);
  const auto fleet = build_instance(c, 3, 4).vms;
  const auto best = brute_force_optimal(*c.jobs, fleet, c.weights);
  CHECK(row.evaluations == 729);
  CHECK(row.objective_value <= best.objective * 1.05);
  CHECK(row.objective_value >= best.objective);
}

TEST_CASE("run_cell: deterministic apart from wall time") {
  ExperimentConfig c = small_config();
  c.timing = true;
  for (auto a : {Algorithm::lca, Algorithm::fcfs, Algorithm::ljf}) {
    const auto x = run_cell(c, a, 5, 11);
    const auto y = run_cell(c, a, 5, 11);
    CHECK(x.same_result(y));
    CHECK(x.wall_ms >= 0.0);
  }
  CHECK_FALSE(run_cell(c, Algorithm::lca, 5, 11).same_result(run_cell(c, Algorithm::lca, 5, 12)));
}

TEST_CASE("run_cell: configuration errors") {
  ExperimentConfig c = small_config();
  c.vm_counts.clear();
  CHECK_THROWS_AS(run_cell(c, Algorithm::fcfs, 2, 1), InvalidParameter);
  c = small_config();
  c.repetitions = 0;
  CHECK_THROWS_AS(run_sweep(c), InvalidParameter);
  c = small_config();
  c.lca.max_evaluations = 3;
  CHECK_THROWS_AS(run_cell(c, Algorithm::lca, 2, 1), InvalidParameter);
  c.algorithms = {Algorithm::fcfs};
  CHECK_NOTHROW(run_sweep(c));
  CHECK_THROWS_AS(parse_algorithm("sjf"), InvalidParameter);
}

TEST_CASE("sweep: product row count in sorted order") {
  ExperimentConfig c = small_config();
  c.vm_counts = {10, 30, 50, 70, 90, 110, 130};
  c.repetitions = 10;
  c.workload.job_count = 8;
  c.lca.seasons = 2;
  const auto rows = run_sweep(c);
  CHECK(rows.size() == 210);
  CHECK(std::is_sorted(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::make_tuple(to_string(a.algorithm), a.num_vms, a.seed) <
           std::make_tuple(to_string(b.algorithm), b.num_vms, b.seed);
  }));
  CHECK(to_string(rows.front().algorithm) == "fcfs");
  CHECK(rows.front().seed == 1);
  CHECK(rows.back().seed == 10);
}

TEST_CASE("sweep: summary means and deviations match the rows") {
  const auto rows = run_sweep(small_config());
  const auto summary = summarize(rows);
  CHECK(summary.size() == 3 * 2 * 4);
  for (const auto& s : summary) {
    std::vector<double> xs;
    for (const auto& r : rows) {
      if (r.algorithm != s.algorithm || r.num_vms != s.num_vms) continue;
      if (s.metric == "makespan") xs.push_back(r.metrics.makespan);
      if (s.metric == "avg_completion") xs.push_back(r.metrics.avg_completion);
      if (s.metric == "avg_response") xs.push_back(r.metrics.avg_response);
      if (s.metric == "objective_value") xs.push_back(r.objective_value);
    }
    REQUIRE(xs.size() == 3);
    CHECK(s.count == 3);
    const double mean = (xs[0] + xs[1] + xs[2]) / 3.0;
    CHECK(s.mean == doctest::Approx(mean).epsilon(1e-12));
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    CHECK(s.stddev == doctest::Approx(std::sqrt(var / 2.0)).epsilon(1e-9));
  }
}

TEST_CASE("sweep: identical CSV across runs and thread counts") {
  auto c = small_config();
  auto csv = [](const ExperimentConfig& cfg) {
    std::ostringstream out;
    write_results_csv(run_sweep(cfg), out);
    return out.str();
  };
  const auto serial = csv(c);
  CHECK(serial == csv(c));
  c.threads = 4;
  CHECK(serial == csv(c));
  CHECK(serial.rfind(std::string(kResultsHeader) + "\n", 0) == 0);
}

TEST_CASE("csv formatting") {
  ResultRow r;
  r.algorithm = Algorithm::lca;
  r.num_vms = 10;
  r.seed = 3;
  r.metrics = {40, 20, 10.0 / 3.0};
  r.objective_value = 20;
  r.evaluations = 19806;
  std::ostringstream out;
  write_results_csv(std::vector<ResultRow>{r}, out);
  CHECK(out.str() == std::string(kResultsHeader) +
                         "\nlca,10,3,40,20,3.3333333333333335,20,19806,0\n");
  CHECK(format_real(0.1) == "0.1");

  std::ostringstream sum;
  write_summary_csv(summarize(std::vector<ResultRow>{r}), sum);
  CHECK(sum.str().rfind(std::string(kSummaryHeader) + "\nlca,10,makespan,40,0,1\n", 0) == 0);
}
