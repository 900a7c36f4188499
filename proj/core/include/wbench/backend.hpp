#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>

#include "wbench/noise.hpp"
#include "wbench/statevector.hpp"

namespace wbench {

struct BackendCapabilities {
  std::string name;
  int n_qubits = 3;
  bool supports_time = false;
};

/// Anything that turns a circuit into a shot histogram. Implementations must
/// be deterministic for a fixed stream and safe to call concurrently with
/// distinct streams.
class ExecutionBackend {
 public:
  virtual ~ExecutionBackend() = default;

  virtual BackendCapabilities capabilities() const = 0;
  virtual ShotHistogram execute(const Circuit& circuit, std::uint64_t shots,
                                const ExecutionContext& context,
                                RngStream& stream) const = 0;
  virtual DeviceSnapshot snapshot(const ExecutionContext& context) const = 0;
};

/// Perfect gates and readout.
class IdealBackend final : public ExecutionBackend {
 public:
  explicit IdealBackend(int n_qubits = 3) : n_qubits_(n_qubits) {}

  BackendCapabilities capabilities() const override;
  ShotHistogram execute(const Circuit& circuit, std::uint64_t shots,
                        const ExecutionContext& context,
                        RngStream& stream) const override;
  DeviceSnapshot snapshot(const ExecutionContext& context) const override;

 private:
  int n_qubits_;
};

/// Noisy device emulator driven by a TemporalScenario.
class EmulatedBackend final : public ExecutionBackend {
 public:
  explicit EmulatedBackend(TemporalScenario scenario, int n_qubits = 3);

  BackendCapabilities capabilities() const override;
  ShotHistogram execute(const Circuit& circuit, std::uint64_t shots,
                        const ExecutionContext& context,
                        RngStream& stream) const override;
  DeviceSnapshot snapshot(const ExecutionContext& context) const override;

  const TemporalScenario& scenario() const { return scenario_; }

 private:
  TemporalScenario scenario_;
  int n_qubits_;
  std::shared_ptr<ConstantFaultCache> cache_;
  mutable std::atomic<bool> clamp_warned_{false};
};

}  // namespace wbench
