#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "lcasched/types.hpp"

namespace lcasched {

enum class ArrivalModel { all_zero, poisson };

struct WorkloadSpec {
  std::uint64_t job_count = 500;
  std::uint64_t len_min = 1000;   // MI, inclusive
  std::uint64_t len_max = 20000;  // MI, inclusive
  ArrivalModel arrivals = ArrivalModel::all_zero;
  double arrival_rate = 1.0;  // jobs per second, Poisson only
  std::uint64_t seed = 0;

  void validate() const;
};

enum class SpeedMode { cycle, sample };

struct FleetSpec {
  std::uint64_t vm_count = 10;
  std::vector<double> speeds{500, 1000, 1500, 2000, 2500};  // MIPS choices
  SpeedMode mode = SpeedMode::cycle;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Ids 0..n-1, lengths uniform on the integer range, arrivals per the model.
std::vector<Job> generate_workload(const WorkloadSpec& spec);

/// Ids 0..m-1; speed of VM i is speeds[i % k] in cycle mode.
std::vector<Vm> generate_fleet(const FleetSpec& spec);

// CSV with header `job_id,arrival_time,length_mi`. Rows are written in id
// order using shortest round-trip decimal formatting.
std::vector<Job> read_jobs_csv(std::istream& in);
void write_jobs_csv(std::span<const Job> jobs, std::ostream& out);

// CSV with header `vm_id,mips`.
std::vector<Vm> read_vms_csv(std::istream& in);
void write_vms_csv(std::span<const Vm> vms, std::ostream& out);

/// File wrappers; throw IoError when the path cannot be opened or written.
std::vector<Job> read_jobs_file(const std::filesystem::path& path);
void write_jobs_file(std::span<const Job> jobs, const std::filesystem::path& path);
std::vector<Vm> read_vms_file(const std::filesystem::path& path);
void write_vms_file(std::span<const Vm> vms, const std::filesystem::path& path);

}  // namespace lcasched
