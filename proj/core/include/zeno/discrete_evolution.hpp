#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "zeno/overlap_schedule.hpp"
#include "zeno/qubit_core.hpp"

namespace zeno {

// Largest step count the branch-word oracle accepts (2^20 words).
inline constexpr std::uint64_t kMaxOracleSteps = 20;

struct SurvivalResult {
  double p_exact = 1.0;
  std::optional<double> p_second_order;
  std::optional<double> criterion_value;
  // series[i] is the exact survival probability after i + 1 steps.
  std::vector<double> series;
  // Second-order prediction after i + 1 steps, filled by survival_series.
  std::vector<double> second_order_series;
};

// O(n) propagation of the projected amplitude pair (A_0, A_1), starting at
// (1, 0). Each step applies U, then multiplies A_1 by the step's overlap
// <E^i_0|E^i_1> (the environment is projected onto <E^i_0|). p_exact is the
// joint probability of ending in |0> with every environment recording 0.
SurvivalResult propagate_projected(const FreeEvolutionUnitary& u, const OverlapSchedule& schedule,
                                   std::uint64_t steps);

struct BranchStats {
  std::uint64_t words_visited = 0;
  std::uint64_t words_contributing = 0;
};

// Brute-force sum over all 2^n words alpha in {=, !=}^n. Only words whose
// induced b-word ends in 0 contribute; each contributes the product of step
// coefficients c_{alpha_i}^{b_i} times the overlaps of steps with b_i = 1.
// Throws CapacityError for n > kMaxOracleSteps.
double enumerate_branches(const FreeEvolutionUnitary& u, const OverlapSchedule& schedule,
                          std::uint64_t steps, BranchStats* stats = nullptr);

enum class StepKind : std::uint8_t { Keep, Flip };

struct BWord {
  std::vector<std::uint8_t> bits;  // b_1 .. b_n
  bool ends_in_zero = true;
  std::uint64_t ones = 0;  // number of i with b_i = 1 (the power of eta in the cross term)
};

// b_0 = 0; b_i = b_{i-1} on Keep, flipped on Flip. Throws ValidationError on an empty word.
BWord b_word_from_alpha(std::span<const StepKind> alpha);

// Parses '=' as Keep and '!' or "≠" as Flip. Throws ValidationError on other characters.
std::vector<StepKind> parse_alpha_word(std::string_view text);

// Rabi realization at omega and delta = T / n, propagated exactly, with the
// second-order prediction and criterion value attached.
SurvivalResult survival_series(const EvolutionConfig& config, const OverlapSchedule& schedule);

}  // namespace zeno
