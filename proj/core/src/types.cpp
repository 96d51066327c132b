#include "lcasched/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lcasched/error.hpp"

namespace lcasched {

void MetricWeights::validate() const {
  for (double w : {makespan, completion, response}) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidParameter("metric weights must be finite and >= 0");
  }
  if (makespan == 0.0 && completion == 0.0 && response == 0.0) {
    throw InvalidParameter("at least one metric weight must be positive");
  }
}

void validate_jobs(std::span<const Job> jobs) {
  if (jobs.empty()) throw InvalidParameter("job list is empty");
  std::vector<std::uint64_t> ids;
  ids.reserve(jobs.size());
  for (const auto& job : jobs) {
    if (!std::isfinite(job.length) || job.length <= 0.0) {
      throw InvalidInput("job " + std::to_string(job.id) + " has nonpositive length");
    }
    if (!std::isfinite(job.arrival_time) || job.arrival_time < 0.0) {
      throw InvalidInput("job " + std::to_string(job.id) + " has negative arrival time");
    }
    ids.push_back(job.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InvalidInput("duplicate job id");
  }
}

void validate_vms(std::span<const Vm> vms) {
  if (vms.empty()) throw InvalidParameter("VM list is empty");
  std::vector<std::uint64_t> ids;
  ids.reserve(vms.size());
  for (const auto& vm : vms) {
    if (!std::isfinite(vm.speed) || vm.speed <= 0.0) {
      throw InvalidInput("VM " + std::to_string(vm.id) + " has nonpositive speed");
    }
    ids.push_back(vm.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InvalidInput("duplicate VM id");
  }
}

void validate_assignment(const Assignment& assignment, std::size_t job_count,
                         std::size_t vm_count) {
  if (assignment.vm_of.size() != job_count) {
    throw InvalidInput("assignment has " + std::to_string(assignment.vm_of.size()) +
                       " entries for " + std::to_string(job_count) + " jobs");
  }
  for (std::size_t j = 0; j < job_count; ++j) {
    if (assignment.vm_of[j] >= vm_count) {
      throw InvalidInput("job position " + std::to_string(j) + " assigned to VM index " +
                         std::to_string(assignment.vm_of[j]) + " out of range");
    }
  }
}

}  // namespace lcasched
