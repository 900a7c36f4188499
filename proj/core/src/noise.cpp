#include "wbench/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "wbench/errors.hpp"

namespace wbench {
namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

double clamp_probability(double p, bool& clamped) {
  if (p < 0.0 || p > 1.0) {
    clamped = true;
    return std::clamp(p, 0.0, 1.0);
  }
  return p;
}

Gate pauli_gate(int code, int qubit) {
  switch (code) {
    case 1: return Gate::x(qubit);
    case 2: return Gate::y(qubit);
    default: return Gate::z(qubit);
  }
}

// Applies the error Pauli for `gate`; `code` in 1..3 (one qubit) or 1..15
// (two qubits, high pair of bits on the control).
void apply_error(StateVector& state, const Gate& gate, int code) {
  if (!gate.is_two_qubit()) {
    state.apply(pauli_gate(code, gate.target));
    return;
  }
  const int on_control = code / 4;
  const int on_target = code % 4;
  if (on_control) state.apply(pauli_gate(on_control, gate.control));
  if (on_target) state.apply(pauli_gate(on_target, gate.target));
}

}  // namespace

ReadoutNoise ReadoutNoise::symmetric(std::vector<double> flips) {
  return ReadoutNoise{flips, flips};
}

ReadoutNoise ReadoutNoise::uniform(int n_qubits, double p) {
  return symmetric(std::vector<double>(static_cast<std::size_t>(n_qubits), p));
}

bool ReadoutNoise::is_zero() const {
  auto zero = [](double p) { return p == 0.0; };
  return std::all_of(flip_0to1.begin(), flip_0to1.end(), zero) &&
         std::all_of(flip_1to0.begin(), flip_1to0.end(), zero);
}

ReadoutNoise ReadoutNoise::resized(int n_qubits) const {
  const auto n = static_cast<std::size_t>(n_qubits);
  auto fit = [&](const std::vector<double>& v) {
    if (v.empty()) return std::vector<double>(n, 0.0);
    if (v.size() == 1) return std::vector<double>(n, v.front());
    if (v.size() < n) {
      throw ConfigError("readout noise lists " + std::to_string(v.size()) +
                        " qubits, register has " + std::to_string(n));
    }
    return std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
  };
  return ReadoutNoise{fit(flip_0to1), fit(flip_1to0.empty() ? flip_0to1 : flip_1to0)};
}

void TemporalScenario::validate() const {
  for (double p : readout.flip_0to1) {
    if (!is_probability(p)) throw ConfigError("readout flip probability outside [0,1]");
  }
  for (double p : readout.flip_1to0) {
    if (!is_probability(p)) throw ConfigError("readout flip probability outside [0,1]");
  }
  if (!is_probability(gate.one_qubit_error) || !is_probability(gate.two_qubit_error)) {
    throw ConfigError("gate error probability outside [0,1]");
  }
  if (oscillation && !(oscillation->period_min > 0.0)) {
    throw ConfigError("oscillation period must be positive");
  }
  for (const auto& o : outliers) {
    if (o.packet_index < 0) throw ConfigError("outlier packet index is negative");
    if (!is_probability(o.extra_flip_probability)) {
      throw ConfigError("outlier extra flip probability outside [0,1]");
    }
  }
  for (const auto& d : delays) {
    if (d.packet_index < 0 || d.extra_delay_min < 0.0) {
      throw ConfigError("delay entries need a non-negative packet index and delay");
    }
  }
}

EffectiveNoise effective_noise_at(const TemporalScenario& scenario, int n_qubits,
                                  const ExecutionContext& context) {
  if (context.time_min < 0.0) throw ContractViolation("time must be non-negative");
  EffectiveNoise out{scenario.readout.resized(n_qubits), scenario.gate, false};

  if (scenario.oscillation) {
    const auto& osc = *scenario.oscillation;
    const double factor =
        1.0 + osc.amplitude_fraction *
                  std::sin(2.0 * std::numbers::pi * context.time_min / osc.period_min +
                           osc.phase_rad);
    if (osc.applies_to != NoiseChannel::Gate) {
      for (auto& p : out.readout.flip_0to1) p *= factor;
      for (auto& p : out.readout.flip_1to0) p *= factor;
    }
    if (osc.applies_to != NoiseChannel::Readout) {
      out.gate.one_qubit_error *= factor;
      out.gate.two_qubit_error *= factor;
    }
  }

  for (const auto& event : scenario.outliers) {
    if (event.packet_index != context.packet_index) continue;
    for (int k = 0; k < n_qubits; ++k) {
      const int label = context.physical_qubits.empty()
                            ? k + 1
                            : context.physical_qubits.at(static_cast<std::size_t>(k));
      const bool hit = event.physical_qubits.empty() ||
                       std::find(event.physical_qubits.begin(), event.physical_qubits.end(),
                                 label) != event.physical_qubits.end();
      if (!hit) continue;
      out.readout.flip_0to1[k] += event.extra_flip_probability;
      out.readout.flip_1to0[k] += event.extra_flip_probability;
    }
  }

  for (auto& p : out.readout.flip_0to1) p = clamp_probability(p, out.clamped);
  for (auto& p : out.readout.flip_1to0) p = clamp_probability(p, out.clamped);
  out.gate.one_qubit_error = clamp_probability(out.gate.one_qubit_error, out.clamped);
  out.gate.two_qubit_error = clamp_probability(out.gate.two_qubit_error, out.clamped);
  return out;
}

double DeviceSnapshot::total_readout_error() const {
  return std::accumulate(reported_readout_error.begin(), reported_readout_error.end(), 0.0);
}

DeviceSnapshot snapshot(const TemporalScenario& scenario, int n_qubits, double time_min) {
  DeviceSnapshot out;
  out.timestamp_min = time_min;
  if (scenario.reported.readout) {
    out.reported_readout_error = ReadoutNoise::symmetric(*scenario.reported.readout)
                                     .resized(n_qubits)
                                     .flip_0to1;
  } else {
    const auto baseline = scenario.readout.resized(n_qubits);
    for (int k = 0; k < n_qubits; ++k) {
      out.reported_readout_error.push_back(0.5 * (baseline.flip_0to1[k] + baseline.flip_1to0[k]));
    }
  }
  out.reported_one_qubit_error =
      scenario.reported.one_qubit_error.value_or(scenario.gate.one_qubit_error);
  out.reported_two_qubit_error =
      scenario.reported.two_qubit_error.value_or(scenario.gate.two_qubit_error);
  return out;
}

CalibrationMatrix true_confusion_matrix(const ReadoutNoise& readout, int n_qubits) {
  const auto noise = readout.resized(n_qubits);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  CalibrationMatrix out{n_qubits, Eigen::MatrixXd(dim, dim)};
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      double value = 1.0;
      for (int k = 0; k < n_qubits; ++k) {
        const int shift = n_qubits - 1 - k;
        const bool read = (i >> shift) & 1;
        const bool prepared = (j >> shift) & 1;
        const double flip = prepared ? noise.flip_1to0[k] : noise.flip_0to1[k];
        value *= (read == prepared) ? 1.0 - flip : flip;
      }
      out.entries(i, j) = value;
    }
  }
  return out;
}

std::optional<ShotHistogram> ConstantFaultCache::find(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

ShotHistogram ConstantFaultCache::publish(const std::string& key, ShotHistogram histogram) {
  std::lock_guard lock(mutex_);
  return entries_.try_emplace(key, std::move(histogram)).first->second;
}

ShotHistogram noisy_execute(const Circuit& circuit, std::uint64_t shots,
                            const EffectiveNoise& noise, RngStream& stream) {
  circuit.validate();
  if (shots == 0) throw ContractViolation("noisy_execute needs at least one shot");
  const auto readout = noise.readout.resized(circuit.n_qubits);

  const StateVector ideal = run_circuit(circuit);
  const auto ideal_dist = exact_probabilities(ideal, circuit.measured_qubits);
  const int width = static_cast<int>(circuit.measured_qubits.size());

  std::vector<std::pair<std::size_t, int>> errors;
  ShotHistogram out(circuit.measured_qubits);
  for (std::uint64_t s = 0; s < shots; ++s) {
    errors.clear();
    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
      const bool two = circuit.gates[g].is_two_qubit();
      const double p = two ? noise.gate.two_qubit_error : noise.gate.one_qubit_error;
      if (stream.bernoulli(p)) {
        errors.emplace_back(g, 1 + static_cast<int>(stream.below(two ? 15 : 3)));
      }
    }

    std::size_t outcome;
    if (errors.empty()) {
      outcome = draw_outcome(ideal_dist.probabilities, stream);
    } else {
      StateVector state(circuit.n_qubits);
      auto next_error = errors.begin();
      for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        state.apply(circuit.gates[g]);
        if (next_error != errors.end() && next_error->first == g) {
          apply_error(state, circuit.gates[g], next_error->second);
          ++next_error;
        }
      }
      outcome = draw_outcome(exact_probabilities(state, circuit.measured_qubits).probabilities,
                             stream);
    }

    for (int k = 0; k < width; ++k) {
      const std::size_t bit = std::size_t{1} << (width - 1 - k);
      const auto q = static_cast<std::size_t>(circuit.measured_qubits[k] - 1);
      const double p = (outcome & bit) ? readout.flip_1to0[q] : readout.flip_0to1[q];
      if (stream.bernoulli(p)) outcome ^= bit;
    }
    out.add(outcome);
  }
  return out;
}

ShotHistogram noisy_execute(const Circuit& circuit, std::uint64_t shots,
                            const TemporalScenario& scenario,
                            const ExecutionContext& context, RngStream& stream,
                            ConstantFaultCache* cache) {
  if (scenario.constant_fault) {
    if (cache == nullptr) throw ContractViolation("constant-fault scenario needs a cache");
    const std::string key = circuit.fingerprint() + "#" + std::to_string(shots);
    if (auto hit = cache->find(key)) return *hit;
    const auto noise = effective_noise_at(scenario, circuit.n_qubits, context);
    return cache->publish(key, noisy_execute(circuit, shots, noise, stream));
  }
  const auto noise = effective_noise_at(scenario, circuit.n_qubits, context);
  return noisy_execute(circuit, shots, noise, stream);
}

}  // namespace wbench
