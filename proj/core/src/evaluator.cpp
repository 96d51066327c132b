#include "lcasched/evaluator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "lcasched/error.hpp"

namespace lcasched {

ScheduleEvaluator::ScheduleEvaluator(std::vector<Job> jobs, std::vector<Vm> vms)
    : jobs_(std::move(jobs)), vms_(std::move(vms)) {
  validate_jobs(jobs_);
  validate_vms(vms_);
  arrival_order_.resize(jobs_.size());
  std::iota(arrival_order_.begin(), arrival_order_.end(), std::size_t{0});
  std::sort(arrival_order_.begin(), arrival_order_.end(), [this](std::size_t a, std::size_t b) {
    if (jobs_[a].arrival_time != jobs_[b].arrival_time) {
      return jobs_[a].arrival_time < jobs_[b].arrival_time;
    }
    return jobs_[a].id < jobs_[b].id;
  });
  min_arrival_ = jobs_[arrival_order_.front()].arrival_time;
}

template <typename Visit>
ScheduleMetrics ScheduleEvaluator::run(std::span<const std::size_t> vm_of,
                                       std::span<const std::size_t> order, Visit&& visit) const {
  std::vector<double> ready(vms_.size(), 0.0);
  double last_finish = -std::numeric_limits<double>::infinity();
  double completion_sum = 0.0;
  double wait_sum = 0.0;
  for (std::size_t j : order) {
    const std::size_t v = vm_of[j];
    if (v >= vms_.size()) throw InvalidInput("assignment index out of range");
    const Job& job = jobs_[j];
    const double start = std::max(ready[v], job.arrival_time);
    const double finish = start + job.length / vms_[v].speed;
    ready[v] = finish;
    last_finish = std::max(last_finish, finish);
    completion_sum += finish;
    wait_sum += start - job.arrival_time;
    visit(j, start, finish, v);
  }
  const auto n = static_cast<double>(jobs_.size());
  return {last_finish - min_arrival_, completion_sum / n, wait_sum / n};
}

void ScheduleEvaluator::check_order(std::span<const std::size_t> order) const {
  if (order.size() != jobs_.size()) throw InvalidInput("service order length mismatch");
  std::vector<char> seen(jobs_.size(), 0);
  for (std::size_t j : order) {
    if (j >= jobs_.size() || seen[j]) throw InvalidInput("service order is not a permutation");
    seen[j] = 1;
  }
}

ScheduleMetrics ScheduleEvaluator::metrics(std::span<const std::size_t> vm_of) const {
  if (vm_of.size() != jobs_.size()) throw InvalidInput("assignment length mismatch");
  return run(vm_of, arrival_order_, [](auto...) {});
}

ScheduleMetrics ScheduleEvaluator::metrics(std::span<const std::size_t> vm_of,
                                           std::span<const std::size_t> service_order) const {
  if (vm_of.size() != jobs_.size()) throw InvalidInput("assignment length mismatch");
  check_order(service_order);
  return run(vm_of, service_order, [](auto...) {});
}

Evaluation ScheduleEvaluator::evaluate(const Assignment& assignment) const {
  return evaluate(assignment, arrival_order_);
}

Evaluation ScheduleEvaluator::evaluate(const Assignment& assignment,
                                       std::span<const std::size_t> service_order) const {
  validate_assignment(assignment, jobs_.size(), vms_.size());
  check_order(service_order);
  Evaluation out;
  out.timeline.resize(jobs_.size());
  out.metrics = run(assignment.vm_of, service_order,
                    [&](std::size_t j, double start, double finish, std::size_t v) {
                      out.timeline[j] = {start, finish, v};
                    });
  return out;
}

Evaluation evaluate(std::span<const Job> jobs, std::span<const Vm> vms,
                    const Assignment& assignment) {
  return ScheduleEvaluator({jobs.begin(), jobs.end()}, {vms.begin(), vms.end()})
      .evaluate(assignment);
}

OracleResult brute_force_optimal(std::span<const Job> jobs, std::span<const Vm> vms,
                                 const MetricWeights& weights) {
  weights.validate();
  const ScheduleEvaluator evaluator({jobs.begin(), jobs.end()}, {vms.begin(), vms.end()});
  const std::size_t n = jobs.size();
  const std::size_t m = vms.size();

  std::uint64_t space = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (space > kOracleLimit / m) throw CapacityError("instance too large for exhaustive search");
    space *= m;
  }

  // Odometer over assignments in increasing lexicographic order; strict
  // improvement keeps the smallest minimizer.
  std::vector<std::size_t> current(n, 0);
  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  for (std::uint64_t step = 0; step < space; ++step) {
    const ScheduleMetrics metrics = evaluator.metrics(current);
    const double value = weighted(weights, metrics);
    if (value < best.objective) {
      best.objective = value;
      best.metrics = metrics;
      best.assignment.vm_of = current;
    }
    for (std::size_t pos = n; pos-- > 0;) {
      if (++current[pos] < m) break;
      current[pos] = 0;
    }
  }
  return best;
}

}  // namespace lcasched
