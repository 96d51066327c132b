#pragma once

// Greedy dispatchers. Jobs are taken in a policy-defined sequence and each is
// sent to the VM that becomes free first (max(ready, arrival)), lowest VM id
// on ties. Each VM then serves its jobs in that same dispatch sequence.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lcasched/types.hpp"

namespace lcasched {

struct DispatchPlan {
  Assignment assignment;
  /// Job positions in dispatch order; the per-VM service sequence.
  std::vector<std::size_t> service_order;
};

enum class LjfMode {
  longest,       // decreasing length, ties by id
  last_arrival,  // decreasing arrival time, ties by larger id first
};

LjfMode parse_ljf_mode(std::string_view text);
std::string_view to_string(LjfMode mode);

/// Increasing arrival time, ties by id.
DispatchPlan fcfs_schedule(std::span<const Job> jobs, std::span<const Vm> vms);

DispatchPlan ljf_schedule(std::span<const Job> jobs, std::span<const Vm> vms,
                          LjfMode mode = LjfMode::longest);

/// Greedy earliest-ready dispatch of `order`.
DispatchPlan dispatch_in_order(std::span<const Job> jobs, std::span<const Vm> vms,
                               std::vector<std::size_t> order);

}  // namespace lcasched
