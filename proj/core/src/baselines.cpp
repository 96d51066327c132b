#include "lcasched/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lcasched/error.hpp"

namespace lcasched {

LjfMode parse_ljf_mode(std::string_view text) {
  if (text == "longest") return LjfMode::longest;
  if (text == "last-arrival") return LjfMode::last_arrival;
  throw InvalidParameter("unknown LJF mode '" + std::string(text) + "'");
}

std::string_view to_string(LjfMode mode) {
  return mode == LjfMode::longest ? "longest" : "last-arrival";
}

DispatchPlan dispatch_in_order(std::span<const Job> jobs, std::span<const Vm> vms,
                               std::vector<std::size_t> order) {
  validate_jobs(jobs);
  validate_vms(vms);
  DispatchPlan plan;
  plan.assignment.vm_of.assign(jobs.size(), 0);
  std::vector<double> ready(vms.size(), 0.0);
  for (std::size_t j : order) {
    const double arrival = jobs[j].arrival_time;
    std::size_t chosen = 0;
    double chosen_free = std::max(ready[0], arrival);
    for (std::size_t v = 1; v < vms.size(); ++v) {
      const double free_at = std::max(ready[v], arrival);
      if (free_at < chosen_free || (free_at == chosen_free && vms[v].id < vms[chosen].id)) {
        chosen = v;
        chosen_free = free_at;
      }
    }
    ready[chosen] = chosen_free + jobs[j].length / vms[chosen].speed;
    plan.assignment.vm_of[j] = chosen;
  }
  plan.service_order = std::move(order);
  return plan;
}

namespace {

template <typename Before>
std::vector<std::size_t> sorted_positions(std::span<const Job> jobs, Before before) {
  std::vector<std::size_t> order(jobs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return before(jobs[a], jobs[b]); });
  return order;
}

}  // namespace

DispatchPlan fcfs_schedule(std::span<const Job> jobs, std::span<const Vm> vms) {
  return dispatch_in_order(jobs, vms, sorted_positions(jobs, [](const Job& a, const Job& b) {
                             if (a.arrival_time != b.arrival_time) return a.arrival_time < b.arrival_time;
                             return a.id < b.id;
                           }));
}

DispatchPlan ljf_schedule(std::span<const Job> jobs, std::span<const Vm> vms, LjfMode mode) {
  if (mode == LjfMode::longest) {
    return dispatch_in_order(jobs, vms, sorted_positions(jobs, [](const Job& a, const Job& b) {
                               if (a.length != b.length) return a.length > b.length;
                               return a.id < b.id;
                             }));
  }
  return dispatch_in_order(jobs, vms, sorted_positions(jobs, [](const Job& a, const Job& b) {
                             if (a.arrival_time != b.arrival_time) return a.arrival_time > b.arrival_time;
                             return a.id > b.id;
                           }));
}

}  // namespace lcasched
