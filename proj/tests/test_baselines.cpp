#include <algorithm>
#include <map>
#include <vector>

#include "doctest.h"
#include "lcasched/baselines.hpp"
#include "lcasched/error.hpp"
#include "lcasched/evaluator.hpp"
#include "lcasched/rng.hpp"

using namespace lcasched;

namespace {

std::vector<Job> three_jobs() { return {{0, 0.0, 10.0}, {1, 0.0, 20.0}, {2, 0.0, 30.0}}; }
std::vector<Vm> two_vms() { return {{0, 1.0}, {1, 2.0}}; }

ScheduleMetrics run(const std::vector<Job>& jobs, const std::vector<Vm>& vms, const DispatchPlan& p) {
  return ScheduleEvaluator(jobs, vms).metrics(p.assignment.vm_of, p.service_order);
}

}  // namespace

TEST_CASE("fcfs: three jobs on two VMs") {
  const auto plan = fcfs_schedule(three_jobs(), two_vms());
  CHECK(plan.assignment.vm_of == std::vector<std::size_t>{0, 1, 0});
  CHECK(plan.service_order == std::vector<std::size_t>{0, 1, 2});
  const auto m = run(three_jobs(), two_vms(), plan);
  CHECK(m.makespan == 40.0);
  CHECK(m.avg_completion == 20.0);
  CHECK(m.avg_response == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("fcfs: one VM takes everything in arrival order") {
  const std::vector<Job> jobs{{5, 3.0, 1.0}, {2, 1.0, 1.0}, {9, 1.0, 1.0}};
  const auto plan = fcfs_schedule(jobs, std::vector<Vm>{{0, 1.0}});
  CHECK(plan.assignment.vm_of == std::vector<std::size_t>{0, 0, 0});
  CHECK(plan.service_order == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("fcfs: idle equal-speed VMs take jobs in id order") {
  std::vector<Job> jobs;
  for (std::uint64_t j = 0; j < 4; ++j) jobs.push_back({j, 0.0, 10.0 + double(j)});
  std::vector<Vm> vms;
  for (std::uint64_t v = 0; v < 6; ++v) vms.push_back({v, 1000.0});
  CHECK(fcfs_schedule(jobs, vms).assignment.vm_of == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("fcfs: VM ties go to the lowest id, not the lowest position") {
  const std::vector<Job> jobs{{0, 0.0, 1.0}};
  const std::vector<Vm> vms{{7, 1.0}, {3, 1.0}};
  CHECK(fcfs_schedule(jobs, vms).assignment.vm_of == std::vector<std::size_t>{1});
}

TEST_CASE("fcfs: a VM idle since before the arrival ties with one freed at the arrival") {
  // VM0 frees at 2, VM1 at 4; job 2 arrives at 5 so both are free: lowest id wins.
  const std::vector<Job> jobs{{0, 0.0, 2.0}, {1, 0.0, 4.0}, {2, 5.0, 1.0}};
  const std::vector<Vm> vms{{0, 1.0}, {1, 1.0}};
  CHECK(fcfs_schedule(jobs, vms).assignment.vm_of == std::vector<std::size_t>{0, 1, 0});
  const std::vector<Vm> swapped{{1, 1.0}, {0, 1.0}};
  CHECK(fcfs_schedule(jobs, swapped).assignment.vm_of == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("ljf: longest first on two VMs") {
  const auto plan = ljf_schedule(three_jobs(), two_vms());
  CHECK(plan.service_order == std::vector<std::size_t>{2, 1, 0});
  CHECK(plan.assignment.vm_of == std::vector<std::size_t>{1, 1, 0});
  const auto m = run(three_jobs(), two_vms(), plan);
  CHECK(m.makespan == 30.0);
  CHECK(m.avg_completion == doctest::Approx(55.0 / 3.0).epsilon(1e-15));
  CHECK(m.avg_response == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("ljf: equal lengths and single jobs match fcfs") {
  std::vector<Job> jobs;
  for (std::uint64_t j = 0; j < 7; ++j) jobs.push_back({j, 0.0, 50.0});
  const auto vms = two_vms();
  CHECK(ljf_schedule(jobs, vms).assignment == fcfs_schedule(jobs, vms).assignment);
  const std::vector<Job> one{{3, 1.0, 9.0}};
  CHECK(ljf_schedule(one, vms).assignment == fcfs_schedule(one, vms).assignment);
}

TEST_CASE("ljf: last-arrival mode dispatches latest arrivals first") {
  const std::vector<Job> jobs{{0, 0.0, 10.0}, {1, 2.0, 10.0}, {2, 1.0, 10.0}, {3, 2.0, 10.0}};
  const auto plan = ljf_schedule(jobs, std::vector<Vm>{{0, 1.0}}, LjfMode::last_arrival);
  CHECK(plan.service_order == std::vector<std::size_t>{3, 1, 2, 0});
  CHECK(parse_ljf_mode("last-arrival") == LjfMode::last_arrival);
  CHECK(parse_ljf_mode("longest") == LjfMode::longest);
  CHECK(to_string(LjfMode::last_arrival) == "last-arrival");
  CHECK_THROWS_AS(parse_ljf_mode("shortest"), InvalidParameter);
}

TEST_CASE("baselines: empty inputs") {
  CHECK_THROWS_AS(fcfs_schedule({}, two_vms()), InvalidParameter);
  CHECK_THROWS_AS(fcfs_schedule(three_jobs(), {}), InvalidParameter);
  CHECK_THROWS_AS(ljf_schedule({}, two_vms()), InvalidParameter);
  CHECK_THROWS_AS(ljf_schedule(three_jobs(), {}), InvalidParameter);
}

TEST_CASE("baselines: valid, deterministic, and fcfs ignores input order") {
  Rng rng(55);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng.below(30), m = 1 + rng.below(6);
    std::vector<Job> jobs;
    for (std::size_t j = 0; j < n; ++j) {
      jobs.push_back({j, double(rng.below(5)), double(rng.between(1, 9))});
    }
    std::vector<Vm> vms;
    for (std::size_t v = 0; v < m; ++v) vms.push_back({v, double(rng.between(1, 3))});

    for (const auto& plan : {fcfs_schedule(jobs, vms), ljf_schedule(jobs, vms),
                             ljf_schedule(jobs, vms, LjfMode::last_arrival)}) {
      REQUIRE(plan.assignment.vm_of.size() == n);
      REQUIRE(std::all_of(plan.assignment.vm_of.begin(), plan.assignment.vm_of.end(),
                          [&](std::size_t v) { return v < m; }));
      auto sorted = plan.service_order;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t j = 0; j < n; ++j) REQUIRE(sorted[j] == j);
    }
    REQUIRE(fcfs_schedule(jobs, vms).assignment == fcfs_schedule(jobs, vms).assignment);
    REQUIRE(ljf_schedule(jobs, vms).assignment == ljf_schedule(jobs, vms).assignment);

    auto shuffled = jobs;
    for (std::size_t i = n; i-- > 1;) std::swap(shuffled[i], shuffled[rng.below(i + 1)]);
    const auto a = fcfs_schedule(jobs, vms).assignment.vm_of;
    const auto b = fcfs_schedule(shuffled, vms).assignment.vm_of;
    std::map<std::uint64_t, std::size_t> by_id_a, by_id_b;
    for (std::size_t j = 0; j < n; ++j) {
      by_id_a[jobs[j].id] = a[j];
      by_id_b[shuffled[j].id] = b[j];
    }
    REQUIRE(by_id_a == by_id_b);
  }
}
