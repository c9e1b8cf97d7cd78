#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "zeno/qubit_core.hpp"

namespace zeno {

// A real overlap eta in [0, 1] stored together with its gap 1 - eta. Families
// such as 1 - alpha / n^beta know the gap exactly even when eta rounds to 1.
struct RealOverlap {
  double eta = 1.0;
  double gap = 0.0;

  static RealOverlap from_eta(double eta);
  static RealOverlap from_gap(double gap);
};

struct ConstantOverlap {
  Complex eta;
};

// eta_n = 1 - alpha / n^beta
struct PowerLawOverlap {
  double alpha;
  double beta;
};

// eta_n = 1 - alpha * exp(-beta n)
struct ExponentialOverlap {
  double alpha;
  double beta;
};

// One complex overlap <E^i_0|E^i_1> per step.
struct ExplicitOverlaps {
  std::vector<Complex> values;
};

// Decoherence law of a run. Family variants realize one real overlap shared by
// all n steps of an n-step run.
class OverlapSchedule {
 public:
  using Variant = std::variant<ConstantOverlap, PowerLawOverlap, ExponentialOverlap, ExplicitOverlaps>;

  static OverlapSchedule constant(Complex eta);
  static OverlapSchedule power_law(double alpha, double beta);
  static OverlapSchedule exponential(double alpha, double beta);
  static OverlapSchedule explicit_steps(std::vector<Complex> overlaps);

  const Variant& variant() const { return variant_; }
  bool is_explicit() const { return std::holds_alternative<ExplicitOverlaps>(variant_); }
  std::string_view family_name() const;

  // Throws ValidationError if the schedule cannot drive an n-step run: an
  // explicit sequence of the wrong length, or a family whose eta_n leaves [0, 1].
  void check_realizable(std::uint64_t steps) const;

  // Shared real overlap of an n-step run. Constant complex overlaps contribute
  // their modulus. Throws ValidationError for explicit schedules.
  RealOverlap realize(std::uint64_t steps) const;

  // Complex overlap applied after step `index` (0-based) of an n-step run.
  Complex step_overlap(std::uint64_t steps, std::uint64_t index) const;

  // First n in min_steps, 2 min_steps, 4 min_steps, ... at which a family is realizable.
  std::uint64_t first_realizable(std::uint64_t min_steps) const;

 private:
  explicit OverlapSchedule(Variant v) : variant_(std::move(v)) {}

  Variant variant_;
};

}  // namespace zeno
