#include "zeno/perturbative_analysis.hpp"

#include <cmath>
#include <string>

#include "zeno/errors.hpp"
#include "zeno/extrapolation.hpp"

namespace zeno {
namespace {

class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

RealOverlap checked_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("eta must lie in [0, 1]");
  return RealOverlap::from_eta(eta);
}

void check_steps(std::uint64_t steps) {
  if (steps < 1) throw ValidationError("n must be >= 1");
}

constexpr int kProbeMinExponent = 6;
constexpr int kAitkenPasses = 2;

}  // namespace

double pair_weight_sum_closed(RealOverlap overlap, std::uint64_t steps) {
  check_steps(steps);
  if (!(overlap.gap > 0.0)) throw ValidationError("closed-form pair sum requires eta < 1");
  if (steps == 1) return 0.0;
  const double n = static_cast<double>(steps);
  const double gap = overlap.gap;
  const double power_minus_one = std::expm1(n * std::log1p(-gap));  // eta^n - 1
  return overlap.eta * (n * gap + power_minus_one) / (gap * gap);
}

double pair_weight_sum_direct(RealOverlap overlap, std::uint64_t steps) {
  check_steps(steps);
  const double n = static_cast<double>(steps);
  if (overlap.gap == 0.0) return 0.5 * n * (n - 1.0);
  if (overlap.eta == 0.0) return 0.0;
  const double log_eta = std::log1p(-overlap.gap);
  NeumaierSum sum;
  for (std::uint64_t k = 1; k < steps; ++k) {
    const double power = std::exp(static_cast<double>(k) * log_eta);
    if (power == 0.0) break;
    sum.add(static_cast<double>(steps - k) * power);
  }
  return sum.value();
}

double pair_weight_sum(RealOverlap overlap, std::uint64_t steps) {
  if (overlap.gap < kDirectSumGap) return pair_weight_sum_direct(overlap, steps);
  return pair_weight_sum_closed(overlap, steps);
}

double zeno_sum(RealOverlap overlap, std::uint64_t steps) {
  check_steps(steps);
  return 0.5 * static_cast<double>(steps) + pair_weight_sum(overlap, steps);
}

double zeno_sum(double eta, std::uint64_t steps) { return zeno_sum(checked_eta(eta), steps); }

double second_order_pn(RealOverlap overlap, double variance, double total_time, std::uint64_t steps) {
  const double delta = total_time / static_cast<double>(steps);
  return 1.0 - 2.0 * zeno_sum(overlap, steps) * variance * delta * delta;
}

double second_order_pn(double eta, const EvolutionConfig& config) {
  config.validate();
  return second_order_pn(checked_eta(eta), config.variance(), config.total_time, config.steps);
}

double explicit_pair_sum(std::span<const Complex> overlaps) {
  // running_j = Sum_{i<j} eta_i ... eta_{j-1} = eta_{j-1} (1 + running_{j-1})
  Complex running{};
  Complex total{};
  for (std::size_t j = 1; j < overlaps.size(); ++j) {
    running = overlaps[j - 1] * (Complex{1.0} + running);
    total += running;
  }
  return total.real();
}

double second_order_pn(std::span<const Complex> overlaps, double variance, double delta) {
  if (overlaps.empty()) throw ValidationError("n must be >= 1");
  const double s = 0.5 * static_cast<double>(overlaps.size()) + explicit_pair_sum(overlaps);
  return 1.0 - 2.0 * s * variance * delta * delta;
}

std::vector<double> pair_sum_series(const OverlapSchedule& schedule, std::uint64_t steps) {
  schedule.check_realizable(steps);
  const Complex shared = schedule.is_explicit() ? Complex{} : Complex{schedule.realize(steps).eta};
  std::vector<double> out;
  out.reserve(steps);
  Complex running{};
  Complex total{};
  for (std::uint64_t i = 0; i < steps; ++i) {
    if (i > 0) {
      const Complex previous = schedule.is_explicit() ? schedule.step_overlap(steps, i - 1) : shared;
      running = previous * (Complex{1.0} + running);
      total += running;
    }
    out.push_back(total.real());
  }
  return out;
}

std::vector<double> second_order_series(const OverlapSchedule& schedule, const EvolutionConfig& config) {
  config.validate();
  const double scale = 2.0 * config.variance() * config.delta() * config.delta();
  std::vector<double> out = pair_sum_series(schedule, config.steps);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = 1.0 - (0.5 * static_cast<double>(i + 1) + out[i]) * scale;
  }
  return out;
}

bool second_order_reliable(const EvolutionConfig& config) {
  const double delta = config.delta();
  return config.variance() * delta * delta <= kSecondOrderWarnThreshold;
}

double criterion_value(RealOverlap overlap, std::uint64_t steps) {
  check_steps(steps);
  const double n = static_cast<double>(steps);
  return pair_weight_sum(overlap, steps) / (n * n);
}

double criterion_value(double eta, std::uint64_t steps) { return criterion_value(checked_eta(eta), steps); }

double criterion_value(std::span<const Complex> overlaps) {
  if (overlaps.empty()) throw ValidationError("n must be >= 1");
  const double n = static_cast<double>(overlaps.size());
  return explicit_pair_sum(overlaps) / (n * n);
}

double intermediate_coefficient(double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("intermediate coefficient: alpha must be > 0");
  if (alpha < 1e-3) return 1.0 - alpha / 3.0 + alpha * alpha / 12.0 - alpha * alpha * alpha / 60.0;
  return 2.0 * (alpha + std::expm1(-alpha)) / (alpha * alpha);
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Zeno:
      return "Zeno";
    case Regime::FreeEvolution:
      return "FreeEvolution";
    case Regime::Intermediate:
      return "Intermediate";
    case Regime::NumericOnly:
      return "NumericOnly";
    case Regime::Undetermined:
      return "Undetermined";
  }
  return "Undetermined";
}

RegimeClassification classify_schedule(const OverlapSchedule& schedule) {
  RegimeClassification out;
  const auto& v = schedule.variant();
  if (const auto* c = std::get_if<ConstantOverlap>(&v)) {
    if (std::abs(c->eta) == 1.0) {
      out.label = Regime::FreeEvolution;
      out.k = 1.0;
    } else {
      out.label = Regime::Zeno;
      out.k = 0.0;
    }
  } else if (const auto* p = std::get_if<PowerLawOverlap>(&v)) {
    if (p->beta < 1.0) {
      out.label = Regime::Zeno;
      out.k = 0.0;
    } else if (p->beta > 1.0) {
      out.label = Regime::FreeEvolution;
      out.k = 1.0;
    } else {
      out.label = Regime::Intermediate;
      out.k = intermediate_coefficient(p->alpha);
    }
  } else if (std::holds_alternative<ExponentialOverlap>(v)) {
    out.label = Regime::FreeEvolution;
    out.k = 1.0;
  } else {
    out.label = Regime::NumericOnly;
    out.note = "explicit overlap sequences have no analytic limit";
  }
  return out;
}

double limit_pn(const OverlapSchedule& schedule, double variance, double total_time) {
  const RegimeClassification c = classify_schedule(schedule);
  if (!c.k) throw ValidationError("limit: schedule is not analytically classifiable");
  return 1.0 - *c.k * variance * total_time * total_time;
}

RegimeClassification numeric_limit_probe(const OverlapSchedule& schedule, const EvolutionConfig& config,
                                         std::uint64_t n_max) {
  if (n_max < 64) throw ValidationError("numeric probe: n_max must be >= 64");
  if (schedule.is_explicit()) {
    throw ValidationError("numeric probe: explicit schedules have a fixed step count and cannot be probed in n");
  }
  config.validate();
  const double scale = config.variance() * config.total_time * config.total_time;
  if (!(scale > 0.0)) throw ValidationError("numeric probe: V T^2 must be > 0 (omega > 0)");
  const double tol = 1e-3 * scale;

  RegimeClassification out;
  std::vector<double> tail;
  const std::uint64_t start = schedule.first_realizable(std::uint64_t{1} << kProbeMinExponent);
  for (std::uint64_t n = start; n <= n_max && n != 0; n *= 2) {
    const RealOverlap overlap = schedule.realize(n);
    ProbePoint pt;
    pt.steps = n;
    pt.eta = overlap.eta;
    pt.criterion = criterion_value(overlap, n);
    pt.p_second_order = second_order_pn(overlap, config.variance(), config.total_time, n);
    out.diagnostics.push_back(pt);
    tail.push_back(pt.p_second_order);
    if (n > n_max / 2) break;
  }

  const TailEstimate est = accelerate_tail(tail, kAitkenPasses);
  out.limit_p = est.limit;
  out.converged = tail.size() >= 4 && est.last_change <= tol;
  if (!out.converged) {
    out.label = Regime::Undetermined;
    out.note = "tail has not settled: last change " + std::to_string(est.last_change) + " over " +
               std::to_string(tail.size()) + " probe points";
    return out;
  }

  const double limit = est.limit;
  if (std::abs(limit - 1.0) <= tol) {
    out.label = Regime::Zeno;
    out.k = 0.0;
  } else if (std::abs(limit - (1.0 - scale)) <= tol) {
    out.label = Regime::FreeEvolution;
    out.k = 1.0;
  } else if (limit > 1.0 - scale && limit < 1.0) {
    out.label = Regime::Intermediate;
    out.k = (1.0 - limit) / scale;
  } else {
    out.label = Regime::Undetermined;
    out.converged = false;
    out.note = "extrapolated limit lies outside [1 - V T^2, 1]";
  }
  return out;
}

}  // namespace zeno
