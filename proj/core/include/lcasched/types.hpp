#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lcasched {

struct Job {
  std::uint64_t id = 0;
  double arrival_time = 0.0;  // seconds
  double length = 0.0;        // machine instructions (MI)

  friend bool operator==(const Job&, const Job&) = default;
};

struct Vm {
  std::uint64_t id = 0;
  double speed = 0.0;  // MIPS

  friend bool operator==(const Vm&, const Vm&) = default;
};

/// vm_of[j] is the index into the VM list for the job at position j of the job list.
struct Assignment {
  std::vector<std::size_t> vm_of;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

struct MetricWeights {
  double makespan = 0.0;
  double completion = 1.0;
  double response = 0.0;

  void validate() const;
};

struct ScheduleMetrics {
  double makespan = 0.0;
  double avg_completion = 0.0;
  double avg_response = 0.0;

  friend bool operator==(const ScheduleMetrics&, const ScheduleMetrics&) = default;
};

inline double weighted(const MetricWeights& w, const ScheduleMetrics& m) {
  return w.makespan * m.makespan + w.completion * m.avg_completion + w.response * m.avg_response;
}

/// Throw InvalidParameter on empty lists, InvalidInput on bad fields or duplicate ids.
void validate_jobs(std::span<const Job> jobs);
void validate_vms(std::span<const Vm> vms);

/// Throws InvalidInput unless the assignment has one in-range entry per job.
void validate_assignment(const Assignment& assignment, std::size_t job_count,
                         std::size_t vm_count);

}  // namespace lcasched
