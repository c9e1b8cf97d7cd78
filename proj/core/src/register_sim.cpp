#include "zeno/register_sim.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

void check_index(std::size_t index, std::size_t qubits, const char* what) {
  if (index >= qubits) {
    throw ValidationError(std::string(what) + ": qubit index " + std::to_string(index) + " out of range for " +
                          std::to_string(qubits) + " qubits");
  }
}

}  // namespace

QubitRegister::QubitRegister(std::size_t qubits) : qubits_(qubits) {
  if (qubits < 1) throw ValidationError("register: at least one qubit is required");
  if (qubits > kMaxQubits) {
    throw CapacityError("register: " + std::to_string(qubits) + " qubits exceeds the cap of " +
                        std::to_string(kMaxQubits));
  }
  amplitudes_.assign(std::size_t{1} << qubits, Complex{});
  amplitudes_[0] = Complex{1.0};
}

QubitRegister::QubitRegister(std::size_t qubits, std::vector<Complex> amplitudes)
    : qubits_(qubits), amplitudes_(std::move(amplitudes)) {}

QubitRegister QubitRegister::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || !std::has_single_bit(size)) {
    throw ValidationError("register: amplitude count must be 2^k with k >= 1");
  }
  const auto qubits = static_cast<std::size_t>(std::countr_zero(size));
  if (qubits > kMaxQubits) {
    throw CapacityError("register: " + std::to_string(qubits) + " qubits exceeds the cap of " +
                        std::to_string(kMaxQubits));
  }
  QubitRegister reg(qubits, std::move(amplitudes));
  if (std::abs(reg.norm_squared() - 1.0) > 1e-12) throw ValidationError("register: squared norm must be 1");
  return reg;
}

double QubitRegister::norm_squared() const {
  double total = 0.0;
  for (const Complex& z : amplitudes_) total += std::norm(z);
  return total;
}

QubitRegister QubitRegister::tensor(const QubitRegister& other) const {
  const std::size_t qubits = qubits_ + other.qubits_;
  if (qubits > kMaxQubits) {
    throw CapacityError("register: " + std::to_string(qubits) + " qubits exceeds the cap of " +
                        std::to_string(kMaxQubits));
  }
  std::vector<Complex> out(std::size_t{1} << qubits);
  for (std::size_t hi = 0; hi < other.amplitudes_.size(); ++hi) {
    for (std::size_t lo = 0; lo < amplitudes_.size(); ++lo) {
      out[(hi << qubits_) | lo] = amplitudes_[lo] * other.amplitudes_[hi];
    }
  }
  return QubitRegister(qubits, std::move(out));
}

QubitRegister apply_cnot(const QubitRegister& state, std::size_t control, std::size_t target) {
  check_index(control, state.qubits_, "cnot control");
  check_index(target, state.qubits_, "cnot target");
  if (control == target) throw ValidationError("cnot: control and target must differ");
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  std::vector<Complex> out(state.amplitudes_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[(i & cbit) ? (i ^ tbit) : i] = state.amplitudes_[i];
  }
  return QubitRegister(state.qubits_, std::move(out));
}

QubitRegister apply_gate(const QubitRegister& state, const Matrix2& gate, std::size_t target) {
  check_index(target, state.qubits_, "gate target");
  const std::size_t tbit = std::size_t{1} << target;
  std::vector<Complex> out = state.amplitudes_;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i & tbit) continue;
    const Complex zero = state.amplitudes_[i];
    const Complex one = state.amplitudes_[i | tbit];
    out[i] = gate(0, 0) * zero + gate(0, 1) * one;
    out[i | tbit] = gate(1, 0) * zero + gate(1, 1) * one;
  }
  return QubitRegister(state.qubits_, std::move(out));
}

QubitRegister apply_controlled_gate(const QubitRegister& state, const Matrix2& gate, std::size_t control,
                                    std::size_t target) {
  check_index(control, state.qubits_, "controlled gate control");
  check_index(target, state.qubits_, "controlled gate target");
  if (control == target) throw ValidationError("controlled gate: control and target must differ");
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  std::vector<Complex> out = state.amplitudes_;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if ((i & tbit) || !(i & cbit)) continue;
    const Complex zero = state.amplitudes_[i];
    const Complex one = state.amplitudes_[i | tbit];
    out[i] = gate(0, 0) * zero + gate(0, 1) * one;
    out[i | tbit] = gate(1, 0) * zero + gate(1, 1) * one;
  }
  return QubitRegister(state.qubits_, std::move(out));
}

DensityMatrix2 partial_trace_to_system(const QubitRegister& state, std::size_t system_index) {
  if (state.qubits() < 2) throw ValidationError("partial trace: register needs at least two qubits");
  check_index(system_index, state.qubits(), "partial trace");
  const std::size_t sbit = std::size_t{1} << system_index;
  const auto amps = state.amplitudes();
  DensityMatrix2 rho{};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & sbit) continue;
    const Complex zero = amps[i];
    const Complex one = amps[i | sbit];
    rho.rho00 += zero * std::conj(zero);
    rho.rho01 += zero * std::conj(one);
    rho.rho10 += one * std::conj(zero);
    rho.rho11 += one * std::conj(one);
  }
  return rho;
}

std::array<double, 2> DensityMatrix2::eigenvalues() const {
  const double a = rho00.real();
  const double d = rho11.real();
  const Complex off = 0.5 * (rho01 + std::conj(rho10));
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(off));
  return {mean - radius, mean + radius};
}

void DensityMatrix2::validate(double tol) const {
  if (std::abs(rho10 - std::conj(rho01)) > tol || std::abs(rho00.imag()) > tol || std::abs(rho11.imag()) > tol) {
    throw ValidationError("density matrix: not Hermitian");
  }
  if (std::abs(trace() - 1.0) > tol) throw ValidationError("density matrix: trace must be 1");
  if (eigenvalues()[0] < -tol) throw ValidationError("density matrix: negative eigenvalue");
}

std::vector<RecoherenceStage> recoherence_demo() {
  const double h = 1.0 / std::sqrt(2.0);
  const QubitRegister system = QubitRegister::from_amplitudes({Complex{h}, Complex{h}});
  const QubitRegister bell = QubitRegister::from_amplitudes({Complex{h}, Complex{}, Complex{}, Complex{h}});
  QubitRegister state = system.tensor(bell);

  std::vector<RecoherenceStage> stages;
  auto record = [&](std::string label) {
    const DensityMatrix2 rho = partial_trace_to_system(state, 0);
    stages.push_back({std::move(label), rho, rho.coherence()});
  };
  record("initial");
  state = apply_cnot(state, 0, 1);
  record("after CNOT(S,E1)");
  state = apply_cnot(state, 0, 2);
  record("after CNOT(S,E2)");
  return stages;
}

}  // namespace zeno
