#include <benchmark/benchmark.h>

#include <vector>

#include "lcasched/baselines.hpp"
#include "lcasched/evaluator.hpp"
#include "lcasched/lca.hpp"
#include "lcasched/rng.hpp"
#include "lcasched/sched_domain.hpp"
#include "lcasched/workload.hpp"

using namespace lcasched;

namespace {

struct Instance {
  std::vector<Job> jobs;
  std::vector<Vm> vms;
};

Instance make_instance(std::uint64_t jobs, std::uint64_t vms) {
  WorkloadSpec ws;
  ws.job_count = jobs;
  ws.seed = 42;
  FleetSpec fs;
  fs.vm_count = vms;
  return {generate_workload(ws), generate_fleet(fs)};
}

void BM_EvaluatorMetrics(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::uint64_t>(state.range(0)), 50);
  const ScheduleEvaluator ev(inst.jobs, inst.vms);
  Rng rng(1);
  std::vector<std::size_t> vm_of(inst.jobs.size());
  for (auto& v : vm_of) v = rng.below(inst.vms.size());
  for (auto _ : state) benchmark::DoNotOptimize(ev.metrics(vm_of));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluatorMetrics)->Arg(500)->Arg(5000);

void BM_DecodeRandomKey(benchmark::State& state) {
  Rng rng(2);
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (auto& e : x) e = rng.uniform(0, 50);
  std::vector<std::size_t> out;
  for (auto _ : state) {
    decode_random_key_into(x, 50, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_DecodeRandomKey)->Arg(500)->Arg(5000);

void BM_LeagueSchedule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lca::generate_league_schedule(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_LeagueSchedule)->Arg(6)->Arg(64);

void BM_Baselines(benchmark::State& state) {
  const auto inst = make_instance(5000, 130);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fcfs_schedule(inst.jobs, inst.vms));
    benchmark::DoNotOptimize(ljf_schedule(inst.jobs, inst.vms));
  }
}
BENCHMARK(BM_Baselines);

void BM_OptimizeSchedule(benchmark::State& state) {
  const auto inst = make_instance(500, 50);
  const auto objective = make_objective(inst.jobs, inst.vms, {});
  const auto domain = random_key_domain(inst.jobs.size(), inst.vms.size());
  lca::LcaParams params;
  params.max_evaluations = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lca::optimize(objective, domain, params).best_fitness);
}
BENCHMARK(BM_OptimizeSchedule)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
