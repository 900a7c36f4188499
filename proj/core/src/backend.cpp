#include "wbench/backend.hpp"

#include "wbench/errors.hpp"
#include "wbench/log.hpp"

namespace wbench {

BackendCapabilities IdealBackend::capabilities() const {
  return {"ideal", n_qubits_, false};
}

ShotHistogram IdealBackend::execute(const Circuit& circuit, std::uint64_t shots,
                                    const ExecutionContext& /*context*/,
                                    RngStream& stream) const {
  const StateVector state = run_circuit(circuit);
  return sample_shots(state, circuit.measured_qubits, shots, stream);
}

DeviceSnapshot IdealBackend::snapshot(const ExecutionContext& context) const {
  DeviceSnapshot out;
  out.reported_readout_error.assign(static_cast<std::size_t>(n_qubits_), 0.0);
  out.timestamp_min = context.time_min;
  return out;
}

EmulatedBackend::EmulatedBackend(TemporalScenario scenario, int n_qubits)
    : scenario_(std::move(scenario)),
      n_qubits_(n_qubits),
      cache_(std::make_shared<ConstantFaultCache>()) {
  scenario_.validate();
  // Surface a bad per-qubit list now rather than mid-job.
  (void)scenario_.readout.resized(n_qubits_);
}

BackendCapabilities EmulatedBackend::capabilities() const {
  return {"emulated:" + scenario_.name, n_qubits_, true};
}

ShotHistogram EmulatedBackend::execute(const Circuit& circuit, std::uint64_t shots,
                                       const ExecutionContext& context,
                                       RngStream& stream) const {
  if (!clamp_warned_.load(std::memory_order_relaxed) &&
      effective_noise_at(scenario_, circuit.n_qubits, context).clamped &&
      !clamp_warned_.exchange(true)) {
    warn("scenario '" + scenario_.name + "' drives a probability outside [0,1] at t=" +
         std::to_string(context.time_min) + " min; clamping");
  }
  return noisy_execute(circuit, shots, scenario_, context, stream, cache_.get());
}

DeviceSnapshot EmulatedBackend::snapshot(const ExecutionContext& context) const {
  return wbench::snapshot(scenario_, n_qubits_, context.time_min);
}

}  // namespace wbench
