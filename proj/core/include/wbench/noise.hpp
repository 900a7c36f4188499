#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wbench/calibration_matrix.hpp"
#include "wbench/rng.hpp"
#include "wbench/statevector.hpp"

namespace wbench {

/// Per-qubit readout flip probabilities. flip_0to1[k] is the chance that a
/// qubit k+1 in |0> is read as 1; flip_1to0 the reverse. Symmetric by default.
struct ReadoutNoise {
  std::vector<double> flip_0to1;
  std::vector<double> flip_1to0;

  static ReadoutNoise symmetric(std::vector<double> flips);
  static ReadoutNoise uniform(int n_qubits, double p);

  int n_qubits() const { return static_cast<int>(flip_0to1.size()); }
  bool is_symmetric() const { return flip_0to1 == flip_1to0; }
  bool is_zero() const;
  // Copy sized to n qubits; a single stored value is broadcast.
  ReadoutNoise resized(int n_qubits) const;
};

/// Depolarizing gate noise: after each gate, with the given probability, a
/// uniformly random non-identity Pauli hits the gate's qubits.
struct GateNoise {
  double one_qubit_error = 0.0;
  double two_qubit_error = 0.0;

  bool is_zero() const { return one_qubit_error == 0.0 && two_qubit_error == 0.0; }
};

enum class NoiseChannel { Readout, Gate, Both };

struct Oscillation {
  double amplitude_fraction = 0.0;
  double period_min = 120.0;
  double phase_rad = 0.0;
  NoiseChannel applies_to = NoiseChannel::Both;
};

// Extra readout flips during one packet index. An empty qubit list hits every
// qubit; otherwise only executions whose triplet contains one of the listed
// physical qubits, and only on those qubits.
struct OutlierEvent {
  int packet_index = 0;
  double extra_flip_probability = 0.0;
  std::vector<int> physical_qubits;
};

// Packet `packet_index` takes `extra_delay_min` longer than nominal.
struct DelayEvent {
  int packet_index = 0;
  double extra_delay_min = 0.0;
};

/// Error figures the emulated device interface reports. Unset values fall
/// back to the scenario baseline.
struct ReportedErrors {
  std::optional<std::vector<double>> readout;
  std::optional<double> one_qubit_error;
  std::optional<double> two_qubit_error;
};

struct TemporalScenario {
  std::string name = "ideal";
  ReadoutNoise readout;
  GateNoise gate;
  std::optional<Oscillation> oscillation;
  std::vector<OutlierEvent> outliers;
  std::vector<DelayEvent> delays;
  bool constant_fault = false;
  ReportedErrors reported;

  // ConfigError on probabilities outside [0,1], non-positive period, or
  // negative delays.
  void validate() const;
};

/// Where and when a circuit runs. `physical_qubits` maps logical qubit k+1 to
/// a device label; empty means labels 1..n.
struct ExecutionContext {
  double time_min = 0.0;
  int packet_index = -1;
  std::vector<int> physical_qubits;
};

struct EffectiveNoise {
  ReadoutNoise readout;
  GateNoise gate;
  bool clamped = false;
};

// Baseline modulated by (1 + a sin(2 pi t / T + phi)) on the chosen channel,
// plus outlier flips for matching packets; clamped to [0,1].
EffectiveNoise effective_noise_at(const TemporalScenario& scenario, int n_qubits,
                                  const ExecutionContext& context);

struct DeviceSnapshot {
  std::vector<double> reported_readout_error;
  double reported_one_qubit_error = 0.0;
  double reported_two_qubit_error = 0.0;
  double timestamp_min = 0.0;

  double total_readout_error() const;
  friend bool operator==(const DeviceSnapshot&, const DeviceSnapshot&) = default;
};

// Reported (unmodulated) figures; blind to oscillations and outliers.
DeviceSnapshot snapshot(const TemporalScenario& scenario, int n_qubits, double time_min);

// Tensor product of per-qubit [[1-p01, p10], [p01, 1-p10]] blocks.
CalibrationMatrix true_confusion_matrix(const ReadoutNoise& readout, int n_qubits);

/// First histogram seen per circuit. Thread-safe; once published an entry is
/// never replaced.
class ConstantFaultCache {
 public:
  std::optional<ShotHistogram> find(const std::string& key) const;
  // Stores `histogram` unless an entry exists; returns the stored entry.
  ShotHistogram publish(const std::string& key, ShotHistogram histogram);

 private:
  mutable std::mutex mutex_;
  std::map<std::string, ShotHistogram> entries_;
};

// One trajectory per shot: gates run in order, each followed by a random
// Pauli with the gate-error probability; the outcome is drawn and each
// measured bit flipped with its readout probability. With all noise zero this
// consumes the stream exactly like sample_shots.
ShotHistogram noisy_execute(const Circuit& circuit, std::uint64_t shots,
                            const EffectiveNoise& noise, RngStream& stream);

// Scenario-aware form: resolves the effective noise at `context` and honours
// the constant-fault mode through `cache` (required when the scenario sets it).
ShotHistogram noisy_execute(const Circuit& circuit, std::uint64_t shots,
                            const TemporalScenario& scenario,
                            const ExecutionContext& context, RngStream& stream,
                            ConstantFaultCache* cache = nullptr);

}  // namespace wbench
