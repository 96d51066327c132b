#include "lcasched/sched_domain.hpp"

#include <cmath>
#include <memory>

#include "lcasched/error.hpp"
#include "lcasched/evaluator.hpp"

namespace lcasched {

void decode_random_key_into(std::span<const double> x, std::size_t vm_count,
                            std::vector<std::size_t>& out) {
  if (vm_count == 0) throw InvalidParameter("VM count must be positive");
  out.resize(x.size());
  const auto upper = static_cast<double>(vm_count);
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double key = x[d];
    if (!std::isfinite(key)) throw InvalidInput("random key is not finite");
    if (key <= 0.0) {
      out[d] = 0;
    } else if (key >= upper) {
      out[d] = vm_count - 1;
    } else {
      out[d] = std::min(static_cast<std::size_t>(key), vm_count - 1);
    }
  }
}

Assignment decode_random_key(std::span<const double> x, std::size_t vm_count) {
  Assignment a;
  decode_random_key_into(x, vm_count, a.vm_of);
  return a;
}

lca::BoxDomain random_key_domain(std::size_t job_count, std::size_t vm_count) {
  if (vm_count == 0) throw InvalidParameter("VM count must be positive");
  return lca::BoxDomain::cube(job_count, 0.0, static_cast<double>(vm_count));
}

lca::Objective make_objective(std::vector<Job> jobs, std::vector<Vm> vms,
                              const MetricWeights& weights) {
  weights.validate();
  auto evaluator = std::make_shared<const ScheduleEvaluator>(std::move(jobs), std::move(vms));
  return [evaluator, weights](std::span<const double> x) {
    if (x.size() != evaluator->jobs().size()) throw InvalidInput("key vector length mismatch");
    std::vector<std::size_t> vm_of;
    decode_random_key_into(x, evaluator->vms().size(), vm_of);
    return weighted(weights, evaluator->metrics(vm_of));
  };
}

}  // namespace lcasched
