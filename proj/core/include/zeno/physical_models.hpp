#pragma once

#include "zeno/overlap_schedule.hpp"

namespace zeno::physical {

// CODATA 2018 reduced Planck constant, J s.
inline constexpr double kHbar = 1.054571817e-34;

// Validity time quoted in the literature for m = 1e-26 kg, sigma = 1e-10 m.
// The closed form below gives about 2.68e-12 s at those inputs, so this value
// is reported alongside results, never used.
inline constexpr double kQuotedValidityTime = 4e-13;

// Free particle H = P^2 / 2m in a Gaussian momentum-space packet of width hbar/sigma.
struct FreeParticleParams {
  double mass;   // kg
  double sigma;  // m
  double hbar = kHbar;

  void validate() const;
};

// Environment particle shifted by +-v delta through H = v sigma_z (x) P.
struct PointerModelParams {
  double velocity;  // m/s
  double sigma;     // m
  double c_ratio;   // interaction time c T / n per step
  double total_time;

  void validate() const;
};

struct BrownianModelParams {
  double diffusion;  // D, with D^2 delta dimensionless
  double total_time;

  void validate() const;
};

// hbar^4 / (8 m^2 sigma^4), in J^2.
double free_particle_variance(const FreeParticleParams& p);

struct ValidityTime {
  double closed_form;    // 2 sqrt(2) m sigma^2 / hbar
  double from_variance;  // hbar / sqrt(Var H)

  double value() const { return closed_form; }
};

// Both routes are evaluated; a relative disagreement above 1e-12 throws
// std::logic_error.
ValidityTime quadratic_validity_time(const FreeParticleParams& p);

// |<Psi_{v delta}|Psi_{-v delta}>| = exp(-(v delta / sigma)^2). Quadratic for delta << sigma / v.
double gaussian_pointer_overlap(double velocity, double delta, double sigma);

// With delta = c T / n: PowerLaw{alpha = (v c T / sigma)^2, beta = 2}.
OverlapSchedule gaussian_model_schedule(const PointerModelParams& p);

// |<E(delta)|E(0)>| ~ 1 - D^2 delta / 2 with delta = T / n: PowerLaw{D^2 T / 2, 1}.
// D = 0 means no diffusion and yields Constant{1}.
OverlapSchedule brownian_schedule(const BrownianModelParams& p);

}  // namespace zeno::physical
