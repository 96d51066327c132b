#pragma once

// Bridge between the continuous optimizer and job-to-VM assignment. A
// formation x in [0, m]^n is a random key: job j goes to VM floor(x_j),
// with x_j = m folded onto m - 1.

#include <cstddef>
#include <span>
#include <vector>

#include "lcasched/lca.hpp"
#include "lcasched/types.hpp"

namespace lcasched {

Assignment decode_random_key(std::span<const double> x, std::size_t vm_count);

/// Decodes into `out` without allocating when its capacity suffices.
void decode_random_key_into(std::span<const double> x, std::size_t vm_count,
                            std::vector<std::size_t>& out);

lca::BoxDomain random_key_domain(std::size_t job_count, std::size_t vm_count);

/// Weighted-metric objective over random keys; jobs on a VM are served in
/// arrival order, ties by id.
lca::Objective make_objective(std::vector<Job> jobs, std::vector<Vm> vms,
                              const MetricWeights& weights);

}  // namespace lcasched
