#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/overlap_schedule.hpp"
#include "zeno/qubit_core.hpp"

namespace zeno {

// Below this gap 1 - eta the closed forms lose digits to cancellation and the
// pair sums are evaluated term by term with compensated summation.
inline constexpr double kDirectSumGap = 1e-4;

// Second-order predictions are flagged once V delta^2 exceeds this.
inline constexpr double kSecondOrderWarnThreshold = 0.1;

// Sum_{k=1}^{n-1} (n - k) eta^k, switching between the two routes below at kDirectSumGap.
double pair_weight_sum(RealOverlap overlap, std::uint64_t steps);

// [n eta (1 - eta) + eta (eta^n - 1)] / (1 - eta)^2, evaluated with expm1/log1p. Requires gap > 0.
double pair_weight_sum_closed(RealOverlap overlap, std::uint64_t steps);

// Term-by-term Neumaier-compensated evaluation.
double pair_weight_sum_direct(RealOverlap overlap, std::uint64_t steps);

// S(eta, n) = n/2 + (n-1) eta + (n-2) eta^2 + ... + eta^{n-1}.
double zeno_sum(double eta, std::uint64_t steps);
double zeno_sum(RealOverlap overlap, std::uint64_t steps);

// 1 - 2 S(eta, n) V delta^2.
double second_order_pn(double eta, const EvolutionConfig& config);
double second_order_pn(RealOverlap overlap, double variance, double total_time, std::uint64_t steps);

// Re Sum_{i<j} eta_i eta_{i+1} ... eta_{j-1}: the pair weight of a run with
// step-dependent overlaps. Equals pair_weight_sum for a constant real eta.
double explicit_pair_sum(std::span<const Complex> overlaps);

// Step-dependent generalization: pairs of flips at steps i < j weigh
// Re(eta_i ... eta_{j-1}); reduces to second_order_pn for a constant real eta.
double second_order_pn(std::span<const Complex> overlaps, double variance, double delta);

// Pair weight after each of the first 1..n steps of an n-step run (entry i is
// the weight of an (i+1)-step run with the same per-step overlaps).
std::vector<double> pair_sum_series(const OverlapSchedule& schedule, std::uint64_t steps);

// Prediction after each of the first 1..n steps at a fixed delta, via the
// running pair-sum recurrence.
std::vector<double> second_order_series(const OverlapSchedule& schedule, const EvolutionConfig& config);

bool second_order_reliable(const EvolutionConfig& config);

// C(eta, n) = Sum_{k=1}^{n-1} (n - k) eta^k / n^2
//           = [n eta (1 - eta) + eta (eta^n - 1)] / ((1 - eta)^2 n^2).
// p_n -> 1 (Zeno freezing) iff C(eta_n, n) -> 0.
double criterion_value(double eta, std::uint64_t steps);
double criterion_value(RealOverlap overlap, std::uint64_t steps);
double criterion_value(std::span<const Complex> overlaps);

// k(alpha) = 2 (1/alpha + (e^{-alpha} - 1) / alpha^2), the coefficient of the
// 1 - alpha/n family. Tends to 1 as alpha -> 0 and to 0 as alpha -> infinity.
double intermediate_coefficient(double alpha);

enum class Regime { Zeno, FreeEvolution, Intermediate, NumericOnly, Undetermined };

std::string_view to_string(Regime regime);

struct ProbePoint {
  std::uint64_t steps = 0;
  double eta = 1.0;
  double criterion = 0.0;
  double p_second_order = 1.0;
};

struct RegimeClassification {
  Regime label = Regime::Undetermined;
  // Coefficient k in lim p_n = 1 - k V T^2: 0 for Zeno, 1 for free evolution.
  std::optional<double> k;
  std::optional<double> limit_p;
  std::vector<ProbePoint> diagnostics;
  bool converged = true;
  std::string note;
};

// Analytic regime of a schedule family. Explicit schedules yield NumericOnly.
RegimeClassification classify_schedule(const OverlapSchedule& schedule);

// lim p_n for an analytically classifiable schedule. Throws ValidationError otherwise.
double limit_pn(const OverlapSchedule& schedule, double variance, double total_time);

// Evaluates second_order_pn on n = 2^k up to n_max (variance and total time
// from `config`), extrapolates the tail with iterated Aitken acceleration and
// labels the extrapolated limit against 1 and 1 - V T^2 at tolerance 1e-3 V T^2.
// A tail that has not settled to within that tolerance is reported as
// Undetermined with converged = false.
RegimeClassification numeric_limit_probe(const OverlapSchedule& schedule, const EvolutionConfig& config,
                                         std::uint64_t n_max);

}  // namespace zeno
