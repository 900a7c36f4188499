#include "wbench/harness.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "wbench/errors.hpp"
#include "wbench/hamiltonian.hpp"
#include "wbench/log.hpp"
#include "wbench/mitigation.hpp"

namespace wbench {

std::string to_string(MitigationMode mode) {
  switch (mode) {
    case MitigationMode::None: return "none";
    case MitigationMode::Static: return "static";
    case MitigationMode::Dynamic: return "dynamic";
  }
  return "none";
}

MitigationMode parse_mitigation_mode(std::string_view text) {
  if (text == "none") return MitigationMode::None;
  if (text == "static") return MitigationMode::Static;
  if (text == "dynamic") return MitigationMode::Dynamic;
  throw ConfigError("unknown mitigation mode \"" + std::string(text) + "\"");
}

std::vector<double> TimeSeries::energies() const {
  std::vector<double> out;
  for (const auto& packet : packets) {
    for (const auto& r : packet.realizations) out.push_back(r.energy);
  }
  return out;
}

std::size_t support_sign_mask(const PauliTerm& term, std::span<const int> measured_qubits) {
  const auto width = measured_qubits.size();
  std::size_t mask = 0;
  for (int q : term.support()) {
    auto it = std::find(measured_qubits.begin(), measured_qubits.end(), q);
    if (it == measured_qubits.end()) {
      throw ContractViolation("qubit " + std::to_string(q) + " of " + term.label() +
                              " was not measured");
    }
    mask |= std::size_t{1} << (width - 1 - static_cast<std::size_t>(it - measured_qubits.begin()));
  }
  return mask;
}

ExperimentResult run_experiment(const ExecutionBackend& backend, const PauliTerm& term,
                                const Circuit& prep, std::uint64_t shots,
                                const ExecutionContext& context, RngStream& stream,
                                bool measure_all) {
  if (shots == 0) throw ContractViolation("an experiment needs at least one shot");
  Circuit circuit = prep.then(premeasurement_circuit(term));
  if (measure_all) {
    circuit.measured_qubits.clear();
    for (int q = 1; q <= circuit.n_qubits; ++q) circuit.measured_qubits.push_back(q);
  }
  ShotHistogram histogram;
  try {
    histogram = backend.execute(circuit, shots, context, stream);
  } catch (const std::exception& e) {
    throw BackendError("experiment " + term.label() + " at t=" +
                       std::to_string(context.time_min) + " min failed: " + e.what());
  }
  const auto freqs = histogram.frequencies();
  const double expectation =
      parity_expectation(freqs, support_sign_mask(term, histogram.measured_qubits()));
  return {expectation, std::move(histogram)};
}

double recompute_energy(const PauliHamiltonian& hamiltonian,
                        std::span<const double> expectations) {
  if (expectations.size() != hamiltonian.terms.size()) {
    throw ContractViolation("expectation count does not match Hamiltonian terms");
  }
  double energy = 0.0;
  for (std::size_t t = 0; t < expectations.size(); ++t) {
    energy += hamiltonian.terms[t].coefficient * expectations[t];
  }
  return energy;
}

Realization run_realization(const ExecutionBackend& backend,
                            const PauliHamiltonian& hamiltonian, const Circuit& prep,
                            std::uint64_t shots, const ExecutionContext& context,
                            RngStream& stream, bool measure_all) {
  if (hamiltonian.n_qubits > backend.capabilities().n_qubits) {
    throw ContractViolation("Hamiltonian exceeds the backend register");
  }
  Realization out;
  out.timestamp_min = context.time_min;
  for (std::size_t t = 0; t < hamiltonian.terms.size(); ++t) {
    RngStream child = stream.split(t);
    auto result = run_experiment(backend, hamiltonian.terms[t], prep, shots, context, child,
                                 measure_all);
    out.expectations.push_back(result.expectation);
    out.histograms.push_back(std::move(result.histogram));
  }
  out.energy = recompute_energy(hamiltonian, out.expectations);
  return out;
}

void JobSpec::validate() const {
  if (triplets.empty()) throw ConfigError("job needs at least one triplet");
  std::set<std::vector<int>> seen;
  for (const auto& t : triplets) {
    if (t.empty()) throw ConfigError("empty triplet");
    if (!seen.insert(t).second) throw ConfigError("triplet listed twice");
  }
  if (packets_per_triplet < 1) throw ConfigError("packets_per_triplet must be >= 1");
  if (shots < 1) throw ConfigError("shots must be >= 1");
  if (packet_size < 1) throw ConfigError("packet_size must be >= 1");
  if (calibration_shots < 1) throw ConfigError("calibration_shots must be >= 1");
  if (!(packet_duration_min > 0.0)) throw ConfigError("packet duration must be positive");
}

std::vector<TimeSeries> run_job(const ExecutionBackend& backend, const JobSpec& spec,
                                const PauliHamiltonian& hamiltonian, const Circuit& prep,
                                const std::vector<DelayEvent>& delays,
                                const PacketCallback& on_packet) {
  spec.validate();
  hamiltonian.validate();
  prep.validate();
  const int n = hamiltonian.n_qubits;
  for (const auto& t : spec.triplets) {
    if (static_cast<int>(t.size()) != n) {
      throw ConfigError("triplet size does not match the " + std::to_string(n) +
                        "-qubit Hamiltonian");
    }
  }

  std::map<int, double> extra_delay;
  for (const auto& d : delays) extra_delay[d.packet_index] += d.extra_delay_min;

  const double circuits_per_packet =
      static_cast<double>(spec.packet_size) * static_cast<double>(hamiltonian.terms.size());
  const double time_per_circuit = spec.packet_duration_min / circuits_per_packet;
  const double calibration_time = static_cast<double>(1 << n) * time_per_circuit;

  std::vector<TimeSeries> series(spec.triplets.size());
  for (std::size_t k = 0; k < series.size(); ++k) {
    series[k].job_id = spec.job_id;
    series[k].triplet = spec.triplets[k];
    series[k].hamiltonian = hamiltonian;
  }

  const RngStream master(spec.seed);
  double clock = 0.0;

  auto run_packet = [&](std::size_t k, int p) {
    TimeSeries& ts = series[k];
    const RngStream packet_stream = master.split(k).split(static_cast<std::uint64_t>(p));
    ExecutionContext context{clock, p, ts.triplet};

    Packet packet;
    packet.index = p;
    const bool calibrate = spec.calibration == MitigationMode::Dynamic ||
                           (spec.calibration == MitigationMode::Static && p == 0);
    double duration = spec.packet_duration_min;
    if (auto it = extra_delay.find(p); it != extra_delay.end()) duration += it->second;

    try {
      if (calibrate) {
        RngStream cal_stream = packet_stream.split("calibration");
        packet.calibration =
            estimate_calibration_matrix(backend, n, spec.calibration_shots, context, cal_stream);
        clock += calibration_time;
        context.time_min = clock;
      }
      packet.timestamp_min = clock;
      packet.snapshot = backend.snapshot(context);
      const double spacing = duration / spec.packet_size;
      for (int r = 0; r < spec.packet_size; ++r) {
        context.time_min = clock + r * spacing;
        RngStream stream = packet_stream.split(static_cast<std::uint64_t>(r));
        packet.realizations.push_back(run_realization(backend, hamiltonian, prep, spec.shots,
                                                      context, stream, spec.measure_all));
      }
    } catch (const BackendError& e) {
      warn("discarding packet " + std::to_string(p) + " of triplet " + std::to_string(k) +
           ": " + e.what());
      ++ts.discarded_packets;
      clock += duration;
      return;
    }
    clock += duration;
    ts.packets.push_back(std::move(packet));
    if (on_packet) on_packet(ts, ts.packets.back());
  };

  if (spec.rotation) {
    for (int p = 0; p < spec.packets_per_triplet; ++p) {
      for (std::size_t k = 0; k < series.size(); ++k) run_packet(k, p);
    }
  } else {
    for (std::size_t k = 0; k < series.size(); ++k) {
      for (int p = 0; p < spec.packets_per_triplet; ++p) run_packet(k, p);
    }
  }
  return series;
}

}  // namespace wbench
