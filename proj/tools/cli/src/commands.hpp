#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "output.hpp"
#include "zeno/overlap_schedule.hpp"

namespace zeno::cli {

struct ScheduleOptions {
  std::string family;  // empty: constant when --eta is given
  std::optional<double> eta;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::vector<std::string> overlaps;

  OverlapSchedule build() const;
};

Json schedule_json(const OverlapSchedule& schedule);

struct SimulateOptions {
  double omega = 1.0;
  double time = 1.0;
  std::uint64_t steps = 0;
  double c_ratio = 1.0;
  bool oracle = false;
  std::uint64_t every = 1;
  ScheduleOptions schedule;
};

struct ClassifyOptions {
  double omega = 1.0;
  double time = 1.0;
  std::uint64_t n_max = std::uint64_t{1} << 20;
  ScheduleOptions schedule;
};

struct SweepOptions {
  double omega = 1.0;
  double time = 1.0;
  std::uint64_t steps = 0;
  std::vector<std::string> vary;
  ScheduleOptions schedule;
};

struct PhysicalOptions {
  std::string model;
  std::optional<double> mass;
  std::optional<double> sigma;
  std::optional<double> hbar;
  std::optional<double> velocity;
  std::optional<double> diffusion;
  double c_ratio = 1.0;
  std::optional<double> time;
  double omega = 1.0;
};

// Each command returns the full document; tables are rendered separately so
// that CSV and JSON carry the same fields.
struct Report {
  Json doc;
  std::optional<Table> table;  // CSV body when present, flattened doc otherwise
  std::vector<std::string> warnings;
};

inline constexpr std::uint64_t kMaxGridPoints = 1'000'000;
inline constexpr std::uint64_t kMaxSimulateSteps = std::uint64_t{1} << 26;

Report cmd_simulate(const SimulateOptions& opts);
Report cmd_classify(const ClassifyOptions& opts);
Report cmd_sweep(const SweepOptions& opts);
Report cmd_physical(const PhysicalOptions& opts);
Report cmd_recohere();

}  // namespace zeno::cli
