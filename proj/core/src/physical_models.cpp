#include "zeno/physical_models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "zeno/errors.hpp"

namespace zeno::physical {
namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError(std::string(what) + " must be > 0");
}

}  // namespace

void FreeParticleParams::validate() const {
  require_positive(mass, "free particle: mass");
  require_positive(sigma, "free particle: sigma");
  require_positive(hbar, "free particle: hbar");
}

void PointerModelParams::validate() const {
  require_positive(velocity, "gaussian pointer: v");
  require_positive(sigma, "gaussian pointer: sigma");
  require_positive(c_ratio, "gaussian pointer: c");
  require_positive(total_time, "gaussian pointer: T");
}

void BrownianModelParams::validate() const {
  if (!(diffusion >= 0.0) || !std::isfinite(diffusion)) throw ValidationError("brownian: D must be >= 0");
  require_positive(total_time, "brownian: T");
}

double free_particle_variance(const FreeParticleParams& p) {
  p.validate();
  // Grouped as (hbar^2 / (m sigma^2))^2 / 8 to stay clear of underflow in hbar^4.
  const double ratio = p.hbar * p.hbar / (p.mass * p.sigma * p.sigma);
  return ratio * ratio / 8.0;
}

ValidityTime quadratic_validity_time(const FreeParticleParams& p) {
  p.validate();
  ValidityTime t;
  t.closed_form = 2.0 * std::sqrt(2.0) * p.mass * p.sigma * p.sigma / p.hbar;
  t.from_variance = p.hbar / std::sqrt(free_particle_variance(p));
  if (std::abs(t.closed_form - t.from_variance) > 1e-12 * std::abs(t.closed_form)) {
    throw std::logic_error("validity time: closed form and variance route disagree");
  }
  return t;
}

double gaussian_pointer_overlap(double velocity, double delta, double sigma) {
  require_positive(sigma, "gaussian pointer: sigma");
  if (!(delta >= 0.0)) throw ValidationError("gaussian pointer: delta must be >= 0");
  if (!std::isfinite(velocity)) throw ValidationError("gaussian pointer: v must be finite");
  const double shift = velocity * delta / sigma;
  return std::exp(-shift * shift);
}

OverlapSchedule gaussian_model_schedule(const PointerModelParams& p) {
  p.validate();
  const double root = p.velocity * p.c_ratio * p.total_time / p.sigma;
  return OverlapSchedule::power_law(root * root, 2.0);
}

OverlapSchedule brownian_schedule(const BrownianModelParams& p) {
  p.validate();
  if (p.diffusion == 0.0) return OverlapSchedule::constant(Complex{1.0});
  return OverlapSchedule::power_law(p.diffusion * p.diffusion * p.total_time / 2.0, 1.0);
}

}  // namespace zeno::physical
