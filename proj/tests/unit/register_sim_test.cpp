#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "zeno/discrete_evolution.hpp"
#include "zeno/errors.hpp"
#include "zeno/register_sim.hpp"

namespace zeno {
namespace {

QubitRegister basis(std::size_t qubits, std::size_t index) {
  std::vector<Complex> amps(std::size_t{1} << qubits);
  amps.at(index) = Complex{1.0};
  return QubitRegister::from_amplitudes(std::move(amps));
}

QubitRegister random_register(std::mt19937_64& rng, std::size_t qubits) {
  std::normal_distribution<double> gauss;
  std::vector<Complex> amps(std::size_t{1} << qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = Complex{gauss(rng), gauss(rng)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return QubitRegister::from_amplitudes(std::move(amps));
}

// Environment step realizing <E_0|E_1> = eta with |E_0> = |0>: first column (eta, sqrt(1 - |eta|^2)).
Matrix2 record_gate(Complex eta) {
  const double s = std::sqrt(1.0 - std::norm(eta));
  return {{eta, Complex{-s}, Complex{s}, std::conj(eta)}};
}

TEST(Cnot, TruthTable) {
  // Little-endian: index = q0 + 2 q1. Control q0 = 1, target q1 = 0 is index 1.
  EXPECT_EQ(apply_cnot(basis(2, 1), 0, 1).amplitude(3), Complex{1.0});
  EXPECT_EQ(apply_cnot(basis(2, 0), 0, 1).amplitude(0), Complex{1.0});
  EXPECT_EQ(apply_cnot(basis(2, 3), 0, 1).amplitude(1), Complex{1.0});
  EXPECT_EQ(apply_cnot(basis(2, 2), 0, 1).amplitude(2), Complex{1.0});
}

TEST(Cnot, MakesBellState) {
  const double h = 1.0 / std::sqrt(2.0);
  const auto plus = QubitRegister::from_amplitudes({Complex{h}, Complex{h}});
  const auto bell = apply_cnot(plus.tensor(QubitRegister(1)), 0, 1);
  EXPECT_NEAR(bell.amplitude(0).real(), h, 1e-15);
  EXPECT_NEAR(bell.amplitude(3).real(), h, 1e-15);
  EXPECT_EQ(bell.amplitude(1), Complex{});
  EXPECT_EQ(bell.amplitude(2), Complex{});
}

TEST(Cnot, Errors) {
  const QubitRegister r(3);
  EXPECT_THROW(apply_cnot(r, 1, 1), ValidationError);
  EXPECT_THROW(apply_cnot(r, 0, 3), ValidationError);
  EXPECT_THROW(QubitRegister(13), CapacityError);
  EXPECT_THROW(QubitRegister::from_amplitudes({Complex{1.0}, Complex{1.0}}), ValidationError);
  EXPECT_THROW(QubitRegister::from_amplitudes({Complex{1.0}, Complex{}, Complex{}}), ValidationError);
}

TEST(Gates, PreserveNorm) {
  std::mt19937_64 rng(testing::test_seed() + 21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 2 + rng() % 7;
    QubitRegister state = random_register(rng, k);
    const std::size_t c = rng() % k;
    const std::size_t t = (c + 1 + rng() % (k - 1)) % k;
    state = apply_cnot(state, c, t);
    ASSERT_NEAR(state.norm_squared(), 1.0, 1e-12);
    state = apply_gate(state, testing::random_unitary(rng).matrix(), t);
    ASSERT_NEAR(state.norm_squared(), 1.0, 1e-12);
    state = apply_controlled_gate(state, testing::random_unitary(rng).matrix(), t, c);
    ASSERT_NEAR(state.norm_squared(), 1.0, 1e-12);
  }
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const double h = 1.0 / std::sqrt(2.0);
  const auto bell = QubitRegister::from_amplitudes({Complex{h}, Complex{}, Complex{}, Complex{h}});
  const auto rho = partial_trace_to_system(bell, 0);
  EXPECT_NEAR(rho.rho00.real(), 0.5, 1e-15);
  EXPECT_NEAR(rho.rho11.real(), 0.5, 1e-15);
  EXPECT_EQ(rho.coherence(), 0.0);
}

TEST(PartialTrace, ProductStateKeepsPurity) {
  const Complex alpha{0.6, 0.0};
  const Complex beta{0.0, 0.8};
  const auto sys = QubitRegister::from_amplitudes({alpha, beta});
  std::mt19937_64 rng(testing::test_seed() + 22);
  const auto rho = partial_trace_to_system(sys.tensor(random_register(rng, 3)), 0);
  EXPECT_NEAR(std::abs(rho.rho01 - alpha * std::conj(beta)), 0.0, 1e-15);
  EXPECT_NEAR(rho.eigenvalues()[0], 0.0, 1e-12);
  EXPECT_NEAR(rho.eigenvalues()[1], 1.0, 1e-12);
}

TEST(PartialTrace, AlwaysAValidDensityMatrix) {
  std::mt19937_64 rng(testing::test_seed() + 23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng() % 9;
    const auto state = random_register(rng, k);
    ASSERT_NO_THROW(partial_trace_to_system(state, rng() % k).validate());
  }
  EXPECT_THROW(partial_trace_to_system(QubitRegister(1), 0), ValidationError);
  EXPECT_THROW(partial_trace_to_system(QubitRegister(2), 2), ValidationError);
}

TEST(DensityMatrix, ValidationRejectsBadMatrices) {
  EXPECT_THROW((DensityMatrix2{Complex{0.5}, Complex{0.1}, Complex{0.2}, Complex{0.5}}.validate()), ValidationError);
  EXPECT_THROW((DensityMatrix2{Complex{0.6}, Complex{}, Complex{}, Complex{0.6}}.validate()), ValidationError);
  EXPECT_THROW((DensityMatrix2{Complex{1.2}, Complex{}, Complex{}, Complex{-0.2}}.validate()), ValidationError);
}

TEST(Recoherence, ReproducesReferenceMatrices) {
  const auto stages = recoherence_demo();
  ASSERT_EQ(stages.size(), 3U);
  EXPECT_NEAR(stages[0].coherence, 0.5, 1e-12);

  const auto& decohered = stages[1].rho;
  EXPECT_NEAR(std::abs(decohered.rho00 - 0.5), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(decohered.rho01), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(decohered.rho10), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(decohered.rho11 - 0.5), 0.0, 1e-12);

  const auto& revived = stages[2].rho;
  for (Complex z : {revived.rho00, revived.rho01, revived.rho10, revived.rho11}) {
    EXPECT_NEAR(std::abs(z - 0.5), 0.0, 1e-12);
  }
  EXPECT_NEAR(stages[2].coherence, 0.5, 1e-12);
  for (const auto& s : stages) EXPECT_NO_THROW(s.rho.validate());
}

// System on qubit 0, one fresh environment qubit per step.
double register_survival(const FreeEvolutionUnitary& u, const std::vector<Complex>& overlaps) {
  QubitRegister state(1 + overlaps.size());
  for (std::size_t i = 0; i < overlaps.size(); ++i) {
    state = apply_gate(state, u.matrix(), 0);
    state = apply_controlled_gate(state, record_gate(overlaps[i]), 0, i + 1);
  }
  // Project onto |0>_S |E_0>...|E_0> = |0...0>.
  return std::norm(state.amplitude(0));
}

TEST(Recoherence, FreshEnvironmentsReproduceProjectedChain) {
  std::mt19937_64 rng(testing::test_seed() + 24);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = testing::random_unitary(rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<Complex> one{Complex{unit(rng)}};
    EXPECT_NEAR(register_survival(u, one), propagate_projected(u, OverlapSchedule::explicit_steps(one), 1).p_exact,
                1e-12);

    const std::size_t n = 1 + rng() % 8;
    std::vector<Complex> overlaps(n);
    for (auto& z : overlaps) z = testing::random_overlap(rng);
    EXPECT_NEAR(register_survival(u, overlaps),
                propagate_projected(u, OverlapSchedule::explicit_steps(overlaps), n).p_exact, 1e-12);
  }
}

}  // namespace
}  // namespace zeno
