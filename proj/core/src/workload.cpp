#include "lcasched/workload.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <string_view>

#include "lcasched/error.hpp"
#include "lcasched/rng.hpp"

namespace lcasched {

void WorkloadSpec::validate() const {
  if (job_count < 1) throw InvalidParameter("job count must be >= 1");
  if (len_min == 0 || len_min > len_max) {
    throw InvalidParameter("job lengths require 0 < len_min <= len_max");
  }
  if (arrivals == ArrivalModel::poisson && !(arrival_rate > 0.0 && std::isfinite(arrival_rate))) {
    throw InvalidParameter("Poisson arrival rate must be positive");
  }
}

void FleetSpec::validate() const {
  if (vm_count < 1) throw InvalidParameter("VM count must be >= 1");
  if (speeds.empty()) throw InvalidParameter("at least one VM speed is required");
  for (double s : speeds) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidParameter("VM speeds must be positive");
  }
}

std::vector<Job> generate_workload(const WorkloadSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<Job> jobs;
  jobs.reserve(spec.job_count);
  double clock = 0.0;
  for (std::uint64_t i = 0; i < spec.job_count; ++i) {
    Job job;
    job.id = i;
    job.length = static_cast<double>(
        spec.len_min + rng.below(spec.len_max - spec.len_min + 1));
    if (spec.arrivals == ArrivalModel::poisson) {
      clock += -std::log(rng.uniform_open()) / spec.arrival_rate;
      job.arrival_time = clock;
    }
    jobs.push_back(job);
  }
  return jobs;
}

std::vector<Vm> generate_fleet(const FleetSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<Vm> vms;
  vms.reserve(spec.vm_count);
  for (std::uint64_t i = 0; i < spec.vm_count; ++i) {
    const std::size_t pick = spec.mode == SpeedMode::cycle
                                 ? static_cast<std::size_t>(i % spec.speeds.size())
                                 : static_cast<std::size_t>(rng.below(spec.speeds.size()));
    vms.push_back({i, spec.speeds[pick]});
  }
  return vms;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <std::size_t N>
std::array<std::string_view, N> split_fields(std::string_view line, std::size_t line_no) {
  std::array<std::string_view, N> fields;
  std::size_t count = 0;
  while (true) {
    const auto comma = line.find(',');
    if (count == N) throw ParseError(line_no, "too many fields");
    fields[count++] = trim(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  if (count != N) {
    throw ParseError(line_no, "expected " + std::to_string(N) + " fields, got " + std::to_string(count));
  }
  return fields;
}

std::uint64_t parse_id(std::string_view text, std::size_t line_no, const char* field) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(line_no, std::string("non-numeric ") + field + " '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view text, std::size_t line_no, const char* field) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(value)) {
    throw ParseError(line_no, std::string("non-numeric ") + field + " '" + std::string(text) + "'");
  }
  return value;
}

void put_real(std::ostream& out, double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.write(buf.data(), ptr - buf.data());
}

/// Calls row(fields, line_no) for every non-blank data line after checking the header.
template <std::size_t N, typename Row>
void read_csv(std::istream& in, std::string_view header, Row&& row) {
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (!saw_header) {
      if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
      if (view != header) throw ParseError(line_no, "expected header '" + std::string(header) + "'");
      saw_header = true;
      continue;
    }
    if (view.empty()) continue;
    row(split_fields<N>(view, line_no), line_no);
  }
  if (!saw_header) throw ParseError(1, "missing header '" + std::string(header) + "'");
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace

std::vector<Job> read_jobs_csv(std::istream& in) {
  std::vector<Job> jobs;
  std::set<std::uint64_t> seen;
  read_csv<3>(in, "job_id,arrival_time,length_mi", [&](const auto& f, std::size_t line_no) {
    Job job;
    job.id = parse_id(f[0], line_no, "job_id");
    job.arrival_time = parse_real(f[1], line_no, "arrival_time");
    job.length = parse_real(f[2], line_no, "length_mi");
    if (job.arrival_time < 0.0) throw ParseError(line_no, "negative arrival_time");
    if (job.length <= 0.0) throw ParseError(line_no, "nonpositive length_mi");
    if (!seen.insert(job.id).second) {
      throw ParseError(line_no, "duplicate job_id " + std::to_string(job.id));
    }
    jobs.push_back(job);
  });
  return jobs;
}

void write_jobs_csv(std::span<const Job> jobs, std::ostream& out) {
  std::vector<const Job*> rows;
  rows.reserve(jobs.size());
  for (const auto& job : jobs) rows.push_back(&job);
  std::stable_sort(rows.begin(), rows.end(), [](const Job* a, const Job* b) { return a->id < b->id; });
  out << "job_id,arrival_time,length_mi\n";
  for (const Job* job : rows) {
    out << job->id << ',';
    put_real(out, job->arrival_time);
    out << ',';
    put_real(out, job->length);
    out << '\n';
  }
}

std::vector<Vm> read_vms_csv(std::istream& in) {
  std::vector<Vm> vms;
  std::set<std::uint64_t> seen;
  read_csv<2>(in, "vm_id,mips", [&](const auto& f, std::size_t line_no) {
    Vm vm;
    vm.id = parse_id(f[0], line_no, "vm_id");
    vm.speed = parse_real(f[1], line_no, "mips");
    if (vm.speed <= 0.0) throw ParseError(line_no, "nonpositive mips");
    if (!seen.insert(vm.id).second) throw ParseError(line_no, "duplicate vm_id " + std::to_string(vm.id));
    vms.push_back(vm);
  });
  return vms;
}

void write_vms_csv(std::span<const Vm> vms, std::ostream& out) {
  std::vector<const Vm*> rows;
  rows.reserve(vms.size());
  for (const auto& vm : vms) rows.push_back(&vm);
  std::stable_sort(rows.begin(), rows.end(), [](const Vm* a, const Vm* b) { return a->id < b->id; });
  out << "vm_id,mips\n";
  for (const Vm* vm : rows) {
    out << vm->id << ',';
    put_real(out, vm->speed);
    out << '\n';
  }
}

std::vector<Job> read_jobs_file(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_jobs_csv(in);
}

void write_jobs_file(std::span<const Job> jobs, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_jobs_csv(jobs, out);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<Vm> read_vms_file(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_vms_csv(in);
}

void write_vms_file(std::span<const Vm> vms, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_vms_csv(vms, out);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace lcasched
