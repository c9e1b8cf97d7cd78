#include "zeno/qubit_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zeno/errors.hpp"

namespace zeno {

Matrix2 Matrix2::adjoint() const {
  Matrix2 out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) out(r, c) = std::conj((*this)(c, r));
  }
  return out;
}

Matrix2 operator*(const Matrix2& lhs, const Matrix2& rhs) {
  Matrix2 out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) out(r, c) = lhs(r, 0) * rhs(0, c) + lhs(r, 1) * rhs(1, c);
  }
  return out;
}

double unitarity_defect(const Matrix2& m) {
  const Matrix2 product = m.adjoint() * m;
  const Matrix2 id = Matrix2::identity();
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(product.m[i] - id.m[i]));
  return worst;
}

Complex FreeEvolutionUnitary::transition(int to, int from) const {
  if (from == 0) return to == 0 ? c_eq_0() : c_neq_1();
  return to == 0 ? c_neq_0() : c_eq_1();
}

Matrix2 FreeEvolutionUnitary::matrix() const { return {{c_eq_0(), c_neq_0(), c_neq_1(), c_eq_1()}}; }

FreeEvolutionUnitary make_rabi_unitary(double omega, double delta) {
  if (!(delta >= 0.0)) throw ValidationError("rabi unitary: delta must be >= 0");
  const double angle = omega * delta;
  return FreeEvolutionUnitary(Complex{std::cos(angle)}, Complex{0.0, -std::sin(angle)}, 0.0);
}

FreeEvolutionUnitary make_general_unitary(Complex a, Complex b, double phi) {
  const double deviation = std::norm(a) + std::norm(b) - 1.0;
  if (!std::isfinite(deviation) || std::abs(deviation) > 1e-9) {
    throw ValidationError("general unitary: |a|^2 + |b|^2 must equal 1 within 1e-9 (deviation " +
                          std::to_string(deviation) + ")");
  }
  if (!std::isfinite(phi)) throw ValidationError("general unitary: phi must be finite");
  return FreeEvolutionUnitary(a, b, phi);
}

void EvolutionConfig::validate() const {
  if (steps < 1) throw ValidationError("config: n must be >= 1");
  if (!(total_time > 0.0) || !std::isfinite(total_time)) throw ValidationError("config: T must be > 0");
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw ValidationError("config: omega must be >= 0");
  if (!(c_ratio > 0.0) || !std::isfinite(c_ratio)) throw ValidationError("config: c_ratio must be > 0");
}

}  // namespace zeno
