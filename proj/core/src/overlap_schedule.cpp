#include "zeno/overlap_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_family_params(const char* family, double alpha, double beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError(std::string(family) + ": alpha must be > 0");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ValidationError(std::string(family) + ": beta must be > 0");
  }
}

double family_gap(const OverlapSchedule::Variant& v, std::uint64_t steps) {
  const double n = static_cast<double>(steps);
  if (const auto* p = std::get_if<PowerLawOverlap>(&v)) return p->alpha / std::pow(n, p->beta);
  if (const auto* e = std::get_if<ExponentialOverlap>(&v)) return e->alpha * std::exp(-e->beta * n);
  const auto& c = std::get<ConstantOverlap>(v);
  return 1.0 - std::abs(c.eta);
}

}  // namespace

RealOverlap RealOverlap::from_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("overlap: eta must lie in [0, 1]");
  return {eta, 1.0 - eta};
}

RealOverlap RealOverlap::from_gap(double gap) {
  if (!(gap >= 0.0 && gap <= 1.0)) throw ValidationError("overlap: 1 - eta must lie in [0, 1]");
  return {1.0 - gap, gap};
}

OverlapSchedule OverlapSchedule::constant(Complex eta) {
  if (!std::isfinite(eta.real()) || !std::isfinite(eta.imag()) || std::abs(eta) > 1.0) {
    throw ValidationError("constant schedule: |eta| must be <= 1");
  }
  return OverlapSchedule(ConstantOverlap{eta});
}

OverlapSchedule OverlapSchedule::power_law(double alpha, double beta) {
  require_family_params("power-law schedule", alpha, beta);
  return OverlapSchedule(PowerLawOverlap{alpha, beta});
}

OverlapSchedule OverlapSchedule::exponential(double alpha, double beta) {
  require_family_params("exponential schedule", alpha, beta);
  return OverlapSchedule(ExponentialOverlap{alpha, beta});
}

OverlapSchedule OverlapSchedule::explicit_steps(std::vector<Complex> overlaps) {
  if (overlaps.empty()) throw ValidationError("explicit schedule: at least one overlap is required");
  for (const Complex& z : overlaps) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1.0) {
      throw ValidationError("explicit schedule: every overlap must satisfy |eta| <= 1");
    }
  }
  return OverlapSchedule(ExplicitOverlaps{std::move(overlaps)});
}

std::string_view OverlapSchedule::family_name() const {
  return std::visit(Overloaded{[](const ConstantOverlap&) { return std::string_view("constant"); },
                               [](const PowerLawOverlap&) { return std::string_view("power-law"); },
                               [](const ExponentialOverlap&) { return std::string_view("exponential"); },
                               [](const ExplicitOverlaps&) { return std::string_view("explicit"); }},
                    variant_);
}

void OverlapSchedule::check_realizable(std::uint64_t steps) const {
  if (steps < 1) throw ValidationError("schedule: n must be >= 1");
  if (const auto* e = std::get_if<ExplicitOverlaps>(&variant_)) {
    if (e->values.size() != steps) {
      throw ValidationError("explicit schedule: " + std::to_string(e->values.size()) +
                            " overlaps given for n = " + std::to_string(steps));
    }
    return;
  }
  if (std::holds_alternative<ConstantOverlap>(variant_)) return;
  const double gap = family_gap(variant_, steps);
  if (!(gap <= 1.0)) {
    throw ValidationError(std::string(family_name()) + " schedule: eta_n = 1 - " + std::to_string(gap) +
                          " is negative at n = " + std::to_string(steps));
  }
}

RealOverlap OverlapSchedule::realize(std::uint64_t steps) const {
  if (is_explicit()) throw ValidationError("explicit schedule: no overlap is shared by all steps");
  check_realizable(steps);
  if (const auto* c = std::get_if<ConstantOverlap>(&variant_)) return RealOverlap::from_eta(std::abs(c->eta));
  return RealOverlap::from_gap(family_gap(variant_, steps));
}

Complex OverlapSchedule::step_overlap(std::uint64_t steps, std::uint64_t index) const {
  if (const auto* e = std::get_if<ExplicitOverlaps>(&variant_)) return e->values.at(index);
  if (const auto* c = std::get_if<ConstantOverlap>(&variant_)) return c->eta;
  return Complex{realize(steps).eta};
}

std::uint64_t OverlapSchedule::first_realizable(std::uint64_t min_steps) const {
  if (is_explicit()) throw ValidationError("explicit schedule: step count is fixed by the sequence");
  std::uint64_t n = std::max<std::uint64_t>(min_steps, 1);
  // Both families have gaps decreasing in n.
  while (family_gap(variant_, n) > 1.0) {
    if (n > (std::uint64_t{1} << 62)) throw ValidationError("schedule: no realizable step count");
    n *= 2;
  }
  return n;
}

}  // namespace zeno
