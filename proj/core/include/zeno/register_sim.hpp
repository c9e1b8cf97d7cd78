#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "zeno/qubit_core.hpp"

namespace zeno {

inline constexpr std::size_t kMaxQubits = 12;

// State vector over k qubits. Little-endian: qubit q is bit q of the amplitude
// index, so qubit 0 (the system by convention) is the least significant bit.
class QubitRegister {
 public:
  // |0...0> on `qubits` qubits. Throws CapacityError above kMaxQubits.
  explicit QubitRegister(std::size_t qubits);

  // Throws ValidationError unless the size is 2^k and the norm is 1 within 1e-12.
  static QubitRegister from_amplitudes(std::vector<Complex> amplitudes);

  std::size_t qubits() const { return qubits_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }
  double norm_squared() const;

  // Tensor product with `other` placed on the higher-index qubits.
  QubitRegister tensor(const QubitRegister& other) const;

 private:
  QubitRegister(std::size_t qubits, std::vector<Complex> amplitudes);

  friend QubitRegister apply_cnot(const QubitRegister&, std::size_t, std::size_t);
  friend QubitRegister apply_gate(const QubitRegister&, const Matrix2&, std::size_t);
  friend QubitRegister apply_controlled_gate(const QubitRegister&, const Matrix2&, std::size_t, std::size_t);

  std::size_t qubits_;
  std::vector<Complex> amplitudes_;
};

struct DensityMatrix2 {
  Complex rho00;
  Complex rho01;
  Complex rho10;
  Complex rho11;

  double coherence() const { return std::abs(rho01); }
  double trace() const { return rho00.real() + rho11.real(); }
  // Eigenvalues of the Hermitian part, ascending.
  std::array<double, 2> eigenvalues() const;
  // Throws ValidationError unless Hermitian, unit-trace and PSD within `tol`.
  void validate(double tol = 1e-12) const;
};

// Flips `target` on the branches where `control` is 1.
QubitRegister apply_cnot(const QubitRegister& state, std::size_t control, std::size_t target);

QubitRegister apply_gate(const QubitRegister& state, const Matrix2& gate, std::size_t target);

QubitRegister apply_controlled_gate(const QubitRegister& state, const Matrix2& gate, std::size_t control,
                                    std::size_t target);

// Reduced density matrix of one qubit with all others traced out.
DensityMatrix2 partial_trace_to_system(const QubitRegister& state, std::size_t system_index);

struct RecoherenceStage {
  std::string label;
  DensityMatrix2 rho;
  double coherence;
};

// System (qubit 0) in (|0> + |1>)/sqrt2, environments E1, E2 (qubits 1, 2) in
// (|00> + |11>)/sqrt2; CNOT(S -> E1) then CNOT(S -> E2). Returns the initial
// stage and the reduced system state after each gate.
std::vector<RecoherenceStage> recoherence_demo();

}  // namespace zeno
