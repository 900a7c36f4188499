#include "wbench/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "wbench/errors.hpp"

namespace wbench {
namespace {

using namespace std::complex_literals;

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Row-major 2x2 block acting on the target qubit.
void single_qubit_block(const Gate& gate, Amplitude m[4]) {
  switch (gate.kind) {
    case GateKind::RotY: {
      const double c = std::cos(gate.angle / 2.0);
      const double s = std::sin(gate.angle / 2.0);
      m[0] = c, m[1] = -s, m[2] = s, m[3] = c;
      return;
    }
    case GateKind::Hadamard:
    case GateKind::ControlledHadamard:
      m[0] = kInvSqrt2, m[1] = kInvSqrt2, m[2] = kInvSqrt2, m[3] = -kInvSqrt2;
      return;
    case GateKind::PauliX:
    case GateKind::ControlledNot:
      m[0] = 0.0, m[1] = 1.0, m[2] = 1.0, m[3] = 0.0;
      return;
    case GateKind::PauliY:
      m[0] = 0.0, m[1] = -1i, m[2] = 1i, m[3] = 0.0;
      return;
    case GateKind::PauliZ:
      m[0] = 1.0, m[1] = 0.0, m[2] = 0.0, m[3] = -1.0;
      return;
    case GateKind::SDagger:
      m[0] = 1.0, m[1] = 0.0, m[2] = 0.0, m[3] = -1i;
      return;
  }
}

const char* kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::RotY: return "ry";
    case GateKind::Hadamard: return "h";
    case GateKind::PauliX: return "x";
    case GateKind::PauliY: return "y";
    case GateKind::PauliZ: return "z";
    case GateKind::SDagger: return "sdg";
    case GateKind::ControlledNot: return "cx";
    case GateKind::ControlledHadamard: return "ch";
  }
  return "?";
}

}  // namespace

std::string Gate::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << kind_name(kind);
  if (kind == GateKind::RotY) out << '(' << angle << ')';
  out << ' ';
  if (is_two_qubit()) out << 'q' << control << ',';
  out << 'q' << target;
  return out.str();
}

Eigen::MatrixXcd gate_matrix(const Gate& gate) {
  Amplitude m[4];
  single_qubit_block(gate, m);
  if (!gate.is_two_qubit()) {
    Eigen::MatrixXcd u(2, 2);
    u << m[0], m[1], m[2], m[3];
    return u;
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
  u(2, 2) = m[0];
  u(2, 3) = m[1];
  u(3, 2) = m[2];
  u(3, 3) = m[3];
  return u;
}

void Circuit::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ContractViolation("circuit register size " + std::to_string(n_qubits) +
                            " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  auto in_range = [&](int q) { return q >= 1 && q <= n_qubits; };
  for (const auto& gate : gates) {
    if (!in_range(gate.target)) {
      throw ContractViolation("gate " + gate.to_string() + " targets a qubit outside the register");
    }
    if (gate.is_two_qubit() && (!in_range(gate.control) || gate.control == gate.target)) {
      throw ContractViolation("gate " + gate.to_string() + " has an invalid control");
    }
  }
  if (measured_qubits.empty()) throw ContractViolation("circuit measures no qubits");
  std::set<int> seen;
  for (int q : measured_qubits) {
    if (!in_range(q)) throw ContractViolation("measured qubit outside the register");
    if (!seen.insert(q).second) throw ContractViolation("measured qubit listed twice");
  }
}

Circuit Circuit::then(const Circuit& tail) const {
  if (tail.n_qubits != n_qubits) {
    throw ContractViolation("cannot compose circuits over different registers");
  }
  Circuit out = *this;
  out.gates.insert(out.gates.end(), tail.gates.begin(), tail.gates.end());
  out.measured_qubits = tail.measured_qubits;
  return out;
}

std::string Circuit::fingerprint() const {
  std::string out = std::to_string(n_qubits) + ":";
  for (const auto& gate : gates) out += gate.to_string() + ";";
  out += "m";
  for (int q : measured_qubits) out += "," + std::to_string(q);
  return out;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ConfigError("register size " + std::to_string(n_qubits) + " outside [1, " +
                      std::to_string(kMaxQubits) + "]");
  }
  amplitudes_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Amplitude> amplitudes)
    : StateVector(n_qubits) {
  if (amplitudes.size() != amplitudes_.size()) {
    throw ContractViolation("amplitude count does not match 2^n");
  }
  amplitudes_ = std::move(amplitudes);
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 1 || qubit > n_qubits_) {
    throw ContractViolation("qubit " + std::to_string(qubit) + " outside register of " +
                            std::to_string(n_qubits_));
  }
}

void StateVector::apply_single(int qubit, const Amplitude m[4]) {
  const std::size_t bit = std::size_t{1} << bit_shift(qubit);
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if (i & bit) continue;
    const Amplitude a0 = amplitudes_[i];
    const Amplitude a1 = amplitudes_[i | bit];
    amplitudes_[i] = m[0] * a0 + m[1] * a1;
    amplitudes_[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply_controlled(int control, int target, const Amplitude m[4]) {
  const std::size_t cbit = std::size_t{1} << bit_shift(control);
  const std::size_t tbit = std::size_t{1} << bit_shift(target);
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if (!(i & cbit) || (i & tbit)) continue;
    const Amplitude a0 = amplitudes_[i];
    const Amplitude a1 = amplitudes_[i | tbit];
    amplitudes_[i] = m[0] * a0 + m[1] * a1;
    amplitudes_[i | tbit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply(const Gate& gate) {
  check_qubit(gate.target);
  Amplitude m[4];
  single_qubit_block(gate, m);
  if (gate.is_two_qubit()) {
    check_qubit(gate.control);
    if (gate.control == gate.target) throw ContractViolation("control equals target");
    apply_controlled(gate.control, gate.target, m);
  } else {
    apply_single(gate.target, m);
  }
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

StateVector new_zero_state(int n_qubits) { return StateVector(n_qubits); }

StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

StateVector run_circuit(const Circuit& circuit) {
  circuit.validate();
  StateVector state(circuit.n_qubits);
  for (const auto& gate : circuit.gates) state.apply(gate);
  return state;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw ContractViolation("fidelity of mismatched registers");
  Amplitude overlap{0.0, 0.0};
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    overlap += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  }
  return std::norm(overlap);
}

std::string to_bitstring(std::size_t outcome, int width) {
  std::string bits(static_cast<std::size_t>(width), '0');
  for (int k = 0; k < width; ++k) {
    if ((outcome >> (width - 1 - k)) & 1U) bits[k] = '1';
  }
  return bits;
}

namespace {

std::size_t parse_bits(std::string_view bits, int width) {
  if (static_cast<int>(bits.size()) != width) {
    throw ContractViolation("bit string \"" + std::string(bits) + "\" has wrong width");
  }
  std::size_t out = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ContractViolation("bit string contains '" + std::string(1, c) + "'");
    out = (out << 1) | static_cast<std::size_t>(c == '1');
  }
  return out;
}

void check_measured(int n_qubits, std::span<const int> measured) {
  if (measured.empty()) throw ContractViolation("no measured qubits");
  std::set<int> seen;
  for (int q : measured) {
    if (q < 1 || q > n_qubits) throw ContractViolation("measured qubit outside the register");
    if (!seen.insert(q).second) throw ContractViolation("measured qubit listed twice");
  }
}

}  // namespace

double OutcomeDistribution::probability(std::string_view bits) const {
  return probabilities.at(parse_bits(bits, static_cast<int>(measured_qubits.size())));
}

OutcomeDistribution exact_probabilities(const StateVector& state,
                                        std::span<const int> measured_qubits) {
  check_measured(state.n_qubits(), measured_qubits);
  const int width = static_cast<int>(measured_qubits.size());
  OutcomeDistribution out{{measured_qubits.begin(), measured_qubits.end()},
                          std::vector<double>(std::size_t{1} << width, 0.0)};
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    std::size_t outcome = 0;
    for (int q : measured_qubits) {
      outcome = (outcome << 1) | ((i >> state.bit_shift(q)) & 1U);
    }
    out.probabilities[outcome] += std::norm(state.amplitudes()[i]);
  }
  return out;
}

double exact_expectation(const StateVector& state, const PauliTerm& term) {
  if (term.n_qubits() != state.n_qubits()) {
    throw ContractViolation("Pauli term " + term.letters + " does not match register size");
  }
  std::size_t flip_mask = 0;
  for (int q = 1; q <= state.n_qubits(); ++q) {
    const char c = term.letter(q);
    if (c == 'X' || c == 'Y') flip_mask |= std::size_t{1} << state.bit_shift(q);
  }
  Amplitude total{0.0, 0.0};
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    Amplitude phase{1.0, 0.0};
    for (int q = 1; q <= state.n_qubits(); ++q) {
      const bool bit = (i >> state.bit_shift(q)) & 1U;
      switch (term.letter(q)) {
        case 'Y': phase *= bit ? Amplitude{0.0, -1.0} : Amplitude{0.0, 1.0}; break;
        case 'Z': if (bit) phase = -phase; break;
        default: break;
      }
    }
    total += std::conj(amps[i ^ flip_mask]) * phase * amps[i];
  }
  return total.real();
}

double exact_energy(const StateVector& state, const PauliHamiltonian& hamiltonian) {
  double energy = 0.0;
  for (const auto& term : hamiltonian.terms) {
    energy += term.coefficient * exact_expectation(state, term);
  }
  return energy;
}

ShotHistogram::ShotHistogram(std::vector<int> measured_qubits)
    : measured_qubits_(std::move(measured_qubits)),
      counts_(std::size_t{1} << measured_qubits_.size(), 0) {}

ShotHistogram::ShotHistogram(std::vector<int> measured_qubits,
                             std::vector<std::uint64_t> counts)
    : measured_qubits_(std::move(measured_qubits)), counts_(std::move(counts)) {
  if (counts_.size() != (std::size_t{1} << measured_qubits_.size())) {
    throw ContractViolation("histogram counts do not match 2^width");
  }
  for (auto c : counts_) total_ += c;
}

std::uint64_t ShotHistogram::count(std::string_view bits) const {
  return counts_.at(outcome_index(bits));
}

double ShotHistogram::frequency(std::size_t outcome) const {
  if (total_ == 0) throw ContractViolation("frequency of an empty histogram");
  return static_cast<double>(counts_.at(outcome)) / static_cast<double>(total_);
}

std::vector<double> ShotHistogram::frequencies() const {
  std::vector<double> out(counts_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = frequency(k);
  return out;
}

void ShotHistogram::add(std::size_t outcome, std::uint64_t n) {
  counts_.at(outcome) += n;
  total_ += n;
}

std::string ShotHistogram::bitstring(std::size_t outcome) const {
  return to_bitstring(outcome, width());
}

std::size_t ShotHistogram::outcome_index(std::string_view bits) const {
  return parse_bits(bits, width());
}

std::size_t draw_outcome(std::span<const double> probabilities, RngStream& stream) {
  const double u = stream.uniform();
  double cumulative = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] <= 0.0) continue;
    cumulative += probabilities[k];
    last_nonzero = k;
    if (u < cumulative) return k;
  }
  return last_nonzero;
}

ShotHistogram sample_distribution(const OutcomeDistribution& distribution,
                                  std::uint64_t shots, RngStream& stream) {
  if (shots == 0) throw ContractViolation("sample_shots needs at least one shot");
  ShotHistogram out(distribution.measured_qubits);
  for (std::uint64_t s = 0; s < shots; ++s) {
    out.add(draw_outcome(distribution.probabilities, stream));
  }
  return out;
}

ShotHistogram sample_shots(const StateVector& state, std::span<const int> measured_qubits,
                           std::uint64_t shots, RngStream& stream) {
  if (shots == 0) throw ContractViolation("sample_shots needs at least one shot");
  return sample_distribution(exact_probabilities(state, measured_qubits), shots, stream);
}

ShotHistogram sample_shots(const StateVector& state, std::span<const int> measured_qubits,
                           std::uint64_t shots, std::uint64_t seed) {
  RngStream stream(seed);
  return sample_shots(state, measured_qubits, shots, stream);
}

double parity_expectation(std::span<const double> values, std::size_t sign_mask) {
  double total = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    total += (std::popcount(k & sign_mask) % 2 == 0) ? values[k] : -values[k];
  }
  return total;
}

double parity_expectation(const ShotHistogram& histogram) {
  const auto f = histogram.frequencies();
  return parity_expectation(f, f.size() - 1);
}

}  // namespace wbench
