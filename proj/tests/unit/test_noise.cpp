#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wbench/backend.hpp"
#include "wbench/errors.hpp"
#include "wbench/hamiltonian.hpp"
#include "wbench/noise.hpp"

using namespace wbench;

namespace {

double five_sigma(double p, std::uint64_t n) { return 5.0 * std::sqrt(p * (1 - p) / n); }

EffectiveNoise gate_only(double e1, double e2) {
  return EffectiveNoise{ReadoutNoise::uniform(3, 0.0), GateNoise{e1, e2}, false};
}

}  // namespace

TEST(Noise, ZeroNoiseConsumesStreamLikeSampleShots) {
  const Circuit c = w_state_circuit();
  RngStream a(31), b(31);
  const auto noisy = noisy_execute(c, 1024, gate_only(0.0, 0.0), a);
  const auto ideal = sample_shots(run_circuit(c), c.measured_qubits, 1024, b);
  EXPECT_EQ(noisy, ideal);
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Noise, IdealBackendMatchesSampleShots) {
  const Circuit c = w_state_circuit();
  RngStream a(2), b(2);
  const IdealBackend backend(3);
  EXPECT_EQ(backend.execute(c, 512, {}, a), sample_shots(run_circuit(c), c.measured_qubits, 512, b));
}

// X then a depolarizing error: X keeps |1>, Y flips, Z keeps, so P(1) = 1 - 2e/3.
TEST(Noise, OneQubitDepolarizingFactor) {
  const double e = 0.3;
  const Circuit c{1, {Gate::x(1)}, {1}};
  RngStream s(5);
  const std::uint64_t shots = 200000;
  EffectiveNoise n{ReadoutNoise::uniform(1, 0.0), GateNoise{e, 0.0}, false};
  const auto h = noisy_execute(c, shots, n, s);
  const double expected = 1.0 - 2.0 * e / 3.0;
  EXPECT_NEAR(h.frequency(1), expected, five_sigma(expected, shots));
}

// CNOT on |00>: only the three Z-type Paulis of the fifteen leave 00.
TEST(Noise, TwoQubitDepolarizingFactor) {
  const double e = 0.25;
  const Circuit c{2, {Gate::cnot(1, 2)}, {1, 2}};
  RngStream s(6);
  const std::uint64_t shots = 200000;
  EffectiveNoise n{ReadoutNoise::uniform(2, 0.0), GateNoise{0.0, e}, false};
  const auto h = noisy_execute(c, shots, n, s);
  const double expected = 1.0 - e * 12.0 / 15.0;
  EXPECT_NEAR(h.frequency(0), expected, five_sigma(expected, shots));
  // Each single-qubit flip pattern collects 4 of the 15 Paulis.
  EXPECT_NEAR(h.frequency(0b01), e * 4.0 / 15.0, five_sigma(e * 4.0 / 15.0, shots));
  EXPECT_NEAR(h.frequency(0b11), e * 4.0 / 15.0, five_sigma(e * 4.0 / 15.0, shots));
}

// Parity of a k-bit register under independent flips shrinks by (1 - 2p)^k.
TEST(Noise, ReadoutFlipsShrinkParity) {
  const double p = 0.05;
  const Circuit c{3, {}, {1, 2, 3}};
  RngStream s(7);
  const std::uint64_t shots = 400000;
  EffectiveNoise n{ReadoutNoise::uniform(3, p), GateNoise{}, false};
  const auto h = noisy_execute(c, shots, n, s);
  const double expected = std::pow(1 - 2 * p, 3);
  EXPECT_NEAR(parity_expectation(h), expected, 5.0 / std::sqrt(double(shots)));
}

TEST(Noise, AsymmetricReadout) {
  const Circuit c{2, {Gate::x(1)}, {1, 2}};
  RngStream s(8);
  const std::uint64_t shots = 200000;
  ReadoutNoise r{{0.02, 0.02}, {0.1, 0.1}};
  const auto h = noisy_execute(c, shots, EffectiveNoise{r, GateNoise{}, false}, s);
  // qubit 1 prepared 1 (flips with 0.1), qubit 2 prepared 0 (flips with 0.02)
  EXPECT_NEAR(h.frequency(0b10), 0.9 * 0.98, five_sigma(0.9 * 0.98, shots));
  EXPECT_NEAR(h.frequency(0b01), 0.1 * 0.02, five_sigma(0.1 * 0.02, shots));
}

TEST(Noise, ConfusionMatrixIsTensorProduct) {
  ReadoutNoise r{{0.01, 0.02}, {0.03, 0.04}};
  const auto m = true_confusion_matrix(r, 2);
  Eigen::Matrix2d a, b;
  a << 0.99, 0.03, 0.01, 0.97;
  b << 0.98, 0.04, 0.02, 0.96;
  Eigen::Matrix4d expected;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) expected.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  EXPECT_LT((m.entries - expected).norm(), 1e-15);
  EXPECT_NO_THROW(m.validate());
}

TEST(Noise, OscillationModulatesChosenChannel) {
  TemporalScenario s;
  s.readout = ReadoutNoise::uniform(3, 0.01);
  s.gate = {0.001, 0.01};
  s.oscillation = Oscillation{0.5, 120.0, 0.0, NoiseChannel::Gate};
  const auto at_quarter = effective_noise_at(s, 3, {30.0, 0, {}});
  EXPECT_NEAR(at_quarter.gate.two_qubit_error, 0.015, 1e-15);
  EXPECT_NEAR(at_quarter.readout.flip_0to1[0], 0.01, 1e-15);
  s.oscillation->applies_to = NoiseChannel::Readout;
  const auto trough = effective_noise_at(s, 3, {90.0, 0, {}});
  EXPECT_NEAR(trough.readout.flip_1to0[2], 0.005, 1e-15);
  EXPECT_NEAR(trough.gate.two_qubit_error, 0.01, 1e-15);
}

TEST(Noise, OscillationClampsAndReports) {
  TemporalScenario s;
  s.gate = {0.0, 0.5};
  s.oscillation = Oscillation{3.0, 100.0, 0.0, NoiseChannel::Gate};
  const auto n = effective_noise_at(s, 3, {25.0, 0, {}});
  EXPECT_TRUE(n.clamped);
  EXPECT_DOUBLE_EQ(n.gate.two_qubit_error, 1.0);
}

TEST(Noise, OutlierHitsOnlyListedPhysicalQubits) {
  TemporalScenario s;
  s.readout = ReadoutNoise::uniform(3, 0.01);
  s.outliers.push_back({4, 0.05, {14}});
  const auto hit = effective_noise_at(s, 3, {0.0, 4, {11, 14, 13}});
  EXPECT_NEAR(hit.readout.flip_0to1[0], 0.01, 1e-15);
  EXPECT_NEAR(hit.readout.flip_0to1[1], 0.06, 1e-15);
  const auto other_packet = effective_noise_at(s, 3, {0.0, 5, {11, 14, 13}});
  EXPECT_NEAR(other_packet.readout.flip_0to1[1], 0.01, 1e-15);
  const auto other_triplet = effective_noise_at(s, 3, {0.0, 4, {1, 2, 3}});
  EXPECT_NEAR(other_triplet.readout.flip_0to1[1], 0.01, 1e-15);
}

TEST(Noise, SnapshotIsBlindToDynamics) {
  TemporalScenario s;
  s.readout = ReadoutNoise::uniform(3, 0.013);
  s.gate = {0.0004, 0.008};
  s.oscillation = Oscillation{0.9, 100.0, 0.0, NoiseChannel::Both};
  s.reported.readout = std::vector<double>{0.011};
  const auto a = snapshot(s, 3, 0.0);
  const auto b = snapshot(s, 3, 25.0);
  EXPECT_EQ(a.reported_readout_error, b.reported_readout_error);
  EXPECT_NEAR(a.total_readout_error(), 0.033, 1e-15);
  EXPECT_DOUBLE_EQ(a.reported_two_qubit_error, 0.008);
}

TEST(Noise, ScenarioValidation) {
  TemporalScenario s;
  s.readout = ReadoutNoise::uniform(3, 1.5);
  EXPECT_THROW(s.validate(), ConfigError);
  s = TemporalScenario{};
  s.oscillation = Oscillation{0.1, 0.0};
  EXPECT_THROW(s.validate(), ConfigError);
  s = TemporalScenario{};
  s.delays.push_back({0, -1.0});
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(Noise, ReadoutResizeBroadcastsSingleValue) {
  const auto r = ReadoutNoise::symmetric({0.02}).resized(3);
  EXPECT_EQ(r.flip_0to1, (std::vector<double>{0.02, 0.02, 0.02}));
  EXPECT_THROW(ReadoutNoise::symmetric({0.1, 0.2}).resized(3), ConfigError);
}

TEST(Noise, ConstantFaultRepeatsFirstHistogram) {
  TemporalScenario s;
  s.readout = ReadoutNoise::uniform(3, 0.05);
  s.constant_fault = true;
  const EmulatedBackend backend(s, 3);
  const Circuit c = w_state_circuit();
  RngStream a(1), b(2);
  const auto first = backend.execute(c, 1024, {0.0, 0, {}}, a);
  const auto again = backend.execute(c, 1024, {100.0, 3, {}}, b);
  EXPECT_EQ(first, again);
  RngStream c2(3);
  const auto other_shots = backend.execute(c, 512, {0.0, 0, {}}, c2);
  EXPECT_EQ(other_shots.total_shots(), 512u);
}

TEST(Noise, ConstantFaultNeedsCache) {
  TemporalScenario s;
  s.constant_fault = true;
  RngStream r(1);
  EXPECT_THROW(noisy_execute(w_state_circuit(), 10, s, {}, r, nullptr), ContractViolation);
}

TEST(Noise, EmulatedBackendIsDeterministicPerStream) {
  TemporalScenario s;
  s.readout = ReadoutNoise::uniform(3, 0.02);
  s.gate = {0.001, 0.02};
  const EmulatedBackend backend(s, 3);
  RngStream a(4), b(4);
  EXPECT_EQ(backend.execute(w_state_circuit(), 1024, {}, a),
            backend.execute(w_state_circuit(), 1024, {}, b));
  EXPECT_TRUE(backend.capabilities().supports_time);
}
