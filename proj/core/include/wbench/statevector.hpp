#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wbench/pauli.hpp"
#include "wbench/rng.hpp"

namespace wbench {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 12;

enum class GateKind {
  RotY,
  Hadamard,
  PauliX,
  PauliY,
  PauliZ,
  SDagger,
  ControlledNot,
  ControlledHadamard,
};

/// One gate. Qubit indices are 1-based. `control` is used only by the
/// controlled kinds, `angle` only by RotY.
struct Gate {
  GateKind kind = GateKind::PauliX;
  int target = 1;
  int control = 0;
  double angle = 0.0;

  static Gate rot_y(int target, double angle) { return {GateKind::RotY, target, 0, angle}; }
  static Gate hadamard(int target) { return {GateKind::Hadamard, target}; }
  static Gate x(int target) { return {GateKind::PauliX, target}; }
  static Gate y(int target) { return {GateKind::PauliY, target}; }
  static Gate z(int target) { return {GateKind::PauliZ, target}; }
  static Gate s_dagger(int target) { return {GateKind::SDagger, target}; }
  static Gate cnot(int control, int target) {
    return {GateKind::ControlledNot, target, control};
  }
  static Gate controlled_hadamard(int control, int target) {
    return {GateKind::ControlledHadamard, target, control};
  }

  bool is_two_qubit() const {
    return kind == GateKind::ControlledNot || kind == GateKind::ControlledHadamard;
  }
  std::string to_string() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

// Unitary of the gate: 2x2, or 4x4 on (control, target) with control as the
// high bit.
Eigen::MatrixXcd gate_matrix(const Gate& gate);

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::vector<int> measured_qubits;

  // Throws ContractViolation on out-of-range indices, a control equal to its
  // target, or an empty / duplicated measurement list.
  void validate() const;
  // Gates of `this` followed by gates of `tail`; measures what `tail` measures.
  Circuit then(const Circuit& tail) const;
  // Stable text form used as a cache key and in diagnostics.
  std::string fingerprint() const;
};

class StateVector {
 public:
  // |0...0> on n qubits; ConfigError unless 1 <= n <= kMaxQubits.
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<Amplitude> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  Amplitude amplitude(std::size_t index) const { return amplitudes_.at(index); }

  void apply(const Gate& gate);
  double norm() const;

  // Position of qubit q (1-based) inside a basis index; qubit 1 is the MSB.
  int bit_shift(int qubit) const { return n_qubits_ - qubit; }

 private:
  void check_qubit(int qubit) const;
  void apply_single(int qubit, const Amplitude m[4]);
  void apply_controlled(int control, int target, const Amplitude m[4]);

  int n_qubits_;
  std::vector<Amplitude> amplitudes_;
};

StateVector new_zero_state(int n_qubits);
StateVector apply_gate(StateVector state, const Gate& gate);
// Gates applied in order to |0...0>.
StateVector run_circuit(const Circuit& circuit);
// |<a|b>|^2; global phase is never compared directly.
double fidelity(const StateVector& a, const StateVector& b);

/// Marginal outcome distribution over an ordered list of measured qubits.
/// Outcome index k has measured_qubits[0] as its most significant bit.
struct OutcomeDistribution {
  std::vector<int> measured_qubits;
  std::vector<double> probabilities;

  double probability(std::string_view bits) const;
};

OutcomeDistribution exact_probabilities(const StateVector& state,
                                        std::span<const int> measured_qubits);
// <state|P|state>; the coefficient of `term` is not applied.
double exact_expectation(const StateVector& state, const PauliTerm& term);
// Coefficient-weighted sum of exact_expectation over all terms.
double exact_energy(const StateVector& state, const PauliHamiltonian& hamiltonian);

/// Counts over measured bit strings from one experiment. Stored densely;
/// counts[k] follows the same index convention as OutcomeDistribution.
class ShotHistogram {
 public:
  ShotHistogram() = default;
  explicit ShotHistogram(std::vector<int> measured_qubits);
  ShotHistogram(std::vector<int> measured_qubits, std::vector<std::uint64_t> counts);

  const std::vector<int>& measured_qubits() const { return measured_qubits_; }
  int width() const { return static_cast<int>(measured_qubits_.size()); }
  std::size_t outcomes() const { return counts_.size(); }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total_shots() const { return total_; }

  std::uint64_t count(std::size_t outcome) const { return counts_.at(outcome); }
  std::uint64_t count(std::string_view bits) const;
  double frequency(std::size_t outcome) const;
  std::vector<double> frequencies() const;

  void add(std::size_t outcome, std::uint64_t n = 1);
  std::string bitstring(std::size_t outcome) const;
  std::size_t outcome_index(std::string_view bits) const;

  friend bool operator==(const ShotHistogram&, const ShotHistogram&) = default;

 private:
  std::vector<int> measured_qubits_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

std::string to_bitstring(std::size_t outcome, int width);

// One inverse-CDF draw per shot; identical stream state gives an identical
// histogram.
ShotHistogram sample_distribution(const OutcomeDistribution& distribution,
                                  std::uint64_t shots, RngStream& stream);
ShotHistogram sample_shots(const StateVector& state, std::span<const int> measured_qubits,
                           std::uint64_t shots, RngStream& stream);
ShotHistogram sample_shots(const StateVector& state, std::span<const int> measured_qubits,
                           std::uint64_t shots, std::uint64_t seed);

// Draws one outcome index from `probabilities` using a single uniform.
std::size_t draw_outcome(std::span<const double> probabilities, RngStream& stream);

// Parity-sign estimate sum_b (-1)^popcount(b restricted to `sign_mask`) f(b).
// `sign_mask` selects which outcome bits enter the parity (all bits by default).
double parity_expectation(std::span<const double> values, std::size_t sign_mask);
double parity_expectation(const ShotHistogram& histogram);

}  // namespace wbench
