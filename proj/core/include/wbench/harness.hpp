#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wbench/backend.hpp"
#include "wbench/calibration_matrix.hpp"
#include "wbench/pauli.hpp"

namespace wbench {

inline constexpr std::uint64_t kDefaultShots = 1024;
inline constexpr int kDefaultPacketSize = 50;
// 7.5 h over 31 packets.
inline constexpr double kDefaultPacketDurationMin = 7.5 * 60.0 / 31.0;

enum class MitigationMode { None, Static, Dynamic };

std::string to_string(MitigationMode mode);
MitigationMode parse_mitigation_mode(std::string_view text);

struct ExperimentResult {
  double expectation = 0.0;
  ShotHistogram histogram;
};

struct Realization {
  double energy = 0.0;
  double timestamp_min = 0.0;
  // Aligned with the Hamiltonian's term order.
  std::vector<double> expectations;
  std::vector<ShotHistogram> histograms;

  friend bool operator==(const Realization&, const Realization&) = default;
};

struct Packet {
  // Position in the job's packet schedule; gaps mark discarded packets.
  int index = 0;
  double timestamp_min = 0.0;
  DeviceSnapshot snapshot;
  std::optional<CalibrationMatrix> calibration;
  std::vector<Realization> realizations;
};

struct TimeSeries {
  std::string job_id;
  std::vector<int> triplet;
  PauliHamiltonian hamiltonian;
  std::vector<Packet> packets;
  MitigationMode mitigation_mode = MitigationMode::None;
  int discarded_packets = 0;

  std::vector<double> energies() const;
};

// Parity sign over the term's support, located inside the histogram's
// measured qubits.
std::size_t support_sign_mask(const PauliTerm& term, std::span<const int> measured_qubits);

// Executes prep + premeasurement_circuit(term) and forms the parity-sign
// expectation. With `measure_all` every qubit is read out; the sign still
// uses support bits only. Backend failures are rethrown with context.
ExperimentResult run_experiment(const ExecutionBackend& backend, const PauliTerm& term,
                                const Circuit& prep, std::uint64_t shots,
                                const ExecutionContext& context, RngStream& stream,
                                bool measure_all = false);

// One experiment per term, each on its own child stream.
Realization run_realization(const ExecutionBackend& backend,
                            const PauliHamiltonian& hamiltonian, const Circuit& prep,
                            std::uint64_t shots, const ExecutionContext& context,
                            RngStream& stream, bool measure_all = false);

double recompute_energy(const PauliHamiltonian& hamiltonian,
                        std::span<const double> expectations);

struct JobSpec {
  std::string job_id = "job";
  std::vector<std::vector<int>> triplets{{1, 2, 3}};
  int packets_per_triplet = 31;
  std::uint64_t shots = kDefaultShots;
  int packet_size = kDefaultPacketSize;
  bool rotation = false;
  // Which calibration matrices are measured while the job runs.
  MitigationMode calibration = MitigationMode::None;
  std::uint64_t calibration_shots = kDefaultShots;
  double packet_duration_min = kDefaultPacketDurationMin;
  std::uint64_t seed = 0;
  bool measure_all = false;

  void validate() const;
};

using PacketCallback = std::function<void(const TimeSeries&, const Packet&)>;

// Runs the packet protocol on every triplet against a simulated clock.
// Rotation interleaves triplets packet by packet. Delays from the scenario
// clock lengthen the affected packets. Dynamic calibration spends 2^n extra
// circuits before each packet and the clock pays for them.
std::vector<TimeSeries> run_job(const ExecutionBackend& backend, const JobSpec& spec,
                                const PauliHamiltonian& hamiltonian, const Circuit& prep,
                                const std::vector<DelayEvent>& delays = {},
                                const PacketCallback& on_packet = {});

}  // namespace wbench
