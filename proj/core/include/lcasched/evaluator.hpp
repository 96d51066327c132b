#pragma once

// Non-preemptive execution of an assignment. Each VM serves its jobs one at a
// time in a fixed service sequence: s_j = max(vm_ready, arrival_j),
// C_j = s_j + length_j / speed, vm_ready = C_j. The default sequence is
// arrival order with ties broken by job id.
//
//   makespan        max_j C_j - min_j arrival_j
//   avg_completion  mean_j C_j
//   avg_response    mean_j (s_j - arrival_j)

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lcasched/types.hpp"

namespace lcasched {

struct JobTimeline {
  double start = 0.0;
  double finish = 0.0;
  std::size_t vm = 0;
};

struct Evaluation {
  std::vector<JobTimeline> timeline;  // indexed by job position
  ScheduleMetrics metrics;
};

/// Holds a validated instance and its default service sequence so repeated
/// evaluations cost O(n + m). Immutable after construction; safe to share.
class ScheduleEvaluator {
 public:
  ScheduleEvaluator(std::vector<Job> jobs, std::vector<Vm> vms);

  std::span<const Job> jobs() const noexcept { return jobs_; }
  std::span<const Vm> vms() const noexcept { return vms_; }

  /// Job positions sorted by (arrival_time, id).
  std::span<const std::size_t> arrival_order() const noexcept { return arrival_order_; }

  ScheduleMetrics metrics(std::span<const std::size_t> vm_of) const;
  ScheduleMetrics metrics(std::span<const std::size_t> vm_of,
                          std::span<const std::size_t> service_order) const;

  Evaluation evaluate(const Assignment& assignment) const;
  /// `service_order` is a permutation of job positions; each VM serves its own
  /// jobs in the order they appear there.
  Evaluation evaluate(const Assignment& assignment,
                      std::span<const std::size_t> service_order) const;

 private:
  template <typename Visit>
  ScheduleMetrics run(std::span<const std::size_t> vm_of, std::span<const std::size_t> order,
                      Visit&& visit) const;
  void check_order(std::span<const std::size_t> order) const;

  std::vector<Job> jobs_;
  std::vector<Vm> vms_;
  std::vector<std::size_t> arrival_order_;
  double min_arrival_ = 0.0;
};

Evaluation evaluate(std::span<const Job> jobs, std::span<const Vm> vms,
                    const Assignment& assignment);

struct OracleResult {
  Assignment assignment;
  ScheduleMetrics metrics;
  double objective = 0.0;
};

/// Upper bound on m^n for brute_force_optimal.
inline constexpr std::uint64_t kOracleLimit = 10'000'000;

/// Exhaustive minimizer of the weighted objective over all m^n assignments
/// under the default service sequence. Ties go to the lexicographically
/// smallest assignment. Throws CapacityError when m^n > kOracleLimit.
OracleResult brute_force_optimal(std::span<const Job> jobs, std::span<const Vm> vms,
                                 const MetricWeights& weights);

}  // namespace lcasched
