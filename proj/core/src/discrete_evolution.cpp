#include "zeno/discrete_evolution.hpp"

#include <string>

#include "zeno/errors.hpp"
#include "zeno/perturbative_analysis.hpp"

namespace zeno {

SurvivalResult propagate_projected(const FreeEvolutionUnitary& u, const OverlapSchedule& schedule,
                                   std::uint64_t steps) {
  schedule.check_realizable(steps);
  const Matrix2 m = u.matrix();

  SurvivalResult result;
  result.series.reserve(steps);
  Complex amp0{1.0};
  Complex amp1{};
  for (std::uint64_t i = 0; i < steps; ++i) {
    const Complex next0 = m(0, 0) * amp0 + m(0, 1) * amp1;
    const Complex next1 = m(1, 0) * amp0 + m(1, 1) * amp1;
    amp0 = next0;
    amp1 = next1 * schedule.step_overlap(steps, i);
    result.series.push_back(std::norm(amp0));
  }
  result.p_exact = result.series.back();
  return result;
}

double enumerate_branches(const FreeEvolutionUnitary& u, const OverlapSchedule& schedule,
                          std::uint64_t steps, BranchStats* stats) {
  if (steps > kMaxOracleSteps) {
    throw CapacityError("branch oracle: n = " + std::to_string(steps) + " exceeds the 2^" +
                        std::to_string(kMaxOracleSteps) + " word cap (n <= " + std::to_string(kMaxOracleSteps) +
                        ")");
  }
  schedule.check_realizable(steps);

  std::vector<Complex> overlaps(steps);
  for (std::uint64_t i = 0; i < steps; ++i) overlaps[i] = schedule.step_overlap(steps, i);

  BranchStats local;
  Complex total{};
  std::vector<StepKind> word(steps);
  const std::uint64_t words = std::uint64_t{1} << steps;
  for (std::uint64_t mask = 0; mask < words; ++mask) {
    for (std::uint64_t i = 0; i < steps; ++i) word[i] = (mask >> i) & 1U ? StepKind::Flip : StepKind::Keep;
    ++local.words_visited;
    const BWord b = b_word_from_alpha(word);
    if (!b.ends_in_zero) continue;
    ++local.words_contributing;

    // z_alpha^b = c_{alpha_1}^{b_1} ... c_{alpha_n}^{b_n} <E^1_0|E^1_{b_1}> ... <E^n_0|E^n_{b_n}>
    Complex z{1.0};
    int previous = 0;
    for (std::uint64_t i = 0; i < steps; ++i) {
      const int current = b.bits[i];
      z *= u.transition(current, previous);
      if (current == 1) z *= overlaps[i];
      previous = current;
    }
    total += z;
  }
  if (stats != nullptr) *stats = local;
  return std::norm(total);
}

BWord b_word_from_alpha(std::span<const StepKind> alpha) {
  if (alpha.empty()) throw ValidationError("b-word: alpha word must be nonempty");
  BWord out;
  out.bits.reserve(alpha.size());
  std::uint8_t b = 0;
  for (StepKind kind : alpha) {
    if (kind == StepKind::Flip) b ^= 1U;
    out.bits.push_back(b);
    out.ones += b;
  }
  out.ends_in_zero = (b == 0);
  return out;
}

std::vector<StepKind> parse_alpha_word(std::string_view text) {
  static constexpr std::string_view kNotEqual = "≠";
  std::vector<StepKind> out;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '=') {
      out.push_back(StepKind::Keep);
      ++i;
    } else if (text[i] == '!') {
      out.push_back(StepKind::Flip);
      ++i;
    } else if (text.substr(i, kNotEqual.size()) == kNotEqual) {
      out.push_back(StepKind::Flip);
      i += kNotEqual.size();
    } else {
      throw ValidationError("alpha word: unexpected character at byte " + std::to_string(i));
    }
  }
  return out;
}

SurvivalResult survival_series(const EvolutionConfig& config, const OverlapSchedule& schedule) {
  config.validate();
  const FreeEvolutionUnitary u = make_rabi_unitary(config.omega, config.delta());
  SurvivalResult result = propagate_projected(u, schedule, config.steps);

  if (const auto* e = std::get_if<ExplicitOverlaps>(&schedule.variant())) {
    result.p_second_order = second_order_pn(e->values, config.variance(), config.delta());
    result.criterion_value = criterion_value(e->values);
  } else {
    const RealOverlap overlap = schedule.realize(config.steps);
    result.p_second_order = second_order_pn(overlap, config.variance(), config.total_time, config.steps);
    result.criterion_value = criterion_value(overlap, config.steps);
  }
  result.second_order_series = second_order_series(schedule, config);
  return result;
}

}  // namespace zeno
