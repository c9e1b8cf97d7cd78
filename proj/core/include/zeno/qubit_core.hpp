#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace zeno {

using Complex = std::complex<double>;

// Row-major 2x2 complex matrix; entry(r, c) = m[2 * r + c].
struct Matrix2 {
  std::array<Complex, 4> m{};

  Complex operator()(int row, int col) const { return m[2 * row + col]; }
  Complex& operator()(int row, int col) { return m[2 * row + col]; }

  static Matrix2 identity() { return {{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}}}; }

  Matrix2 adjoint() const;
  friend Matrix2 operator*(const Matrix2& lhs, const Matrix2& rhs);
};

// Largest entrywise modulus of M^dagger M - I.
double unitarity_defect(const Matrix2& m);

// One free-evolution step U_delta in the parametrization
//
//     | a                    b                  |
//     | -e^{i phi} conj(b)   e^{i phi} conj(a)  |
//
// Columns are images of the basis states, so U|0> = a|0> + c_neq_1|1> and
// U|1> = b|0> + c_eq_1|1>. The coefficient names follow the branch-word
// convention: the subscript says whether the step preserved (=) or flipped
// (!=) the state, the superscript is the state the step lands in.
class FreeEvolutionUnitary {
 public:
  Complex a() const { return a_; }
  Complex b() const { return b_; }
  double phi() const { return phi_; }

  Complex c_eq_0() const { return a_; }
  Complex c_neq_0() const { return b_; }
  Complex c_neq_1() const { return -std::polar(1.0, phi_) * std::conj(b_); }
  Complex c_eq_1() const { return std::polar(1.0, phi_) * std::conj(a_); }

  // Amplitude for moving from basis state `from` to basis state `to`.
  Complex transition(int to, int from) const;

  Matrix2 matrix() const;

 private:
  friend FreeEvolutionUnitary make_general_unitary(Complex a, Complex b, double phi);
  friend FreeEvolutionUnitary make_rabi_unitary(double omega, double delta);

  FreeEvolutionUnitary(Complex a, Complex b, double phi) : a_(a), b_(b), phi_(phi) {}

  Complex a_;
  Complex b_;
  double phi_;
};

// sigma_x rotation by omega * delta: a = cos, b = -i sin, phi = 0. Variance V = omega^2.
FreeEvolutionUnitary make_rabi_unitary(double omega, double delta);

// Throws ValidationError when | |a|^2 + |b|^2 - 1 | exceeds 1e-9.
FreeEvolutionUnitary make_general_unitary(Complex a, Complex b, double phi);

// Time grid of one run, in natural units (hbar = 1).
struct EvolutionConfig {
  double omega = 1.0;
  double total_time = 1.0;
  std::uint64_t steps = 1;
  double c_ratio = 1.0;

  double variance() const { return omega * omega; }
  double delta() const { return total_time / static_cast<double>(steps); }

  // Throws ValidationError naming the first violated constraint.
  void validate() const;

  // V * delta^2 < 1; the second-order comparisons are meaningless otherwise.
  bool perturbative() const { return variance() * delta() * delta() < 1.0; }
};

}  // namespace zeno
