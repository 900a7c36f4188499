#include "wbench/mitigation.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "wbench/errors.hpp"

namespace wbench {
namespace {

std::size_t gather_bits(std::size_t index, int n_qubits, std::span<const int> positions) {
  std::size_t out = 0;
  for (int q : positions) out = (out << 1) | ((index >> (n_qubits - q)) & 1U);
  return out;
}

double condition_number(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

const CalibrationMatrix& require_calibration(const std::optional<CalibrationMatrix>& cal,
                                             const Packet& packet) {
  if (!cal) {
    throw MitigationError("packet " + std::to_string(packet.index) +
                          " carries no calibration matrix and no backend was given");
  }
  return *cal;
}

}  // namespace

double QuasiDistribution::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

CalibrationMatrix estimate_calibration_matrix(const ExecutionBackend& backend,
                                              int n_qubits, std::uint64_t shots_per_state,
                                              const ExecutionContext& context,
                                              RngStream& stream) {
  if (shots_per_state == 0) throw ContractViolation("calibration needs at least one shot");
  if (n_qubits < 1 || n_qubits > backend.capabilities().n_qubits) {
    throw ContractViolation("calibration register outside the backend");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  CalibrationMatrix out{n_qubits, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                                        static_cast<Eigen::Index>(dim))};
  std::vector<int> all(static_cast<std::size_t>(n_qubits));
  std::iota(all.begin(), all.end(), 1);
  for (std::size_t j = 0; j < dim; ++j) {
    Circuit prep{n_qubits, {}, all};
    for (int q = 1; q <= n_qubits; ++q) {
      if ((j >> (n_qubits - q)) & 1U) prep.gates.push_back(Gate::x(q));
    }
    RngStream child = stream.split(j);
    ShotHistogram hist;
    try {
      hist = backend.execute(prep, shots_per_state, context, child);
    } catch (const std::exception& e) {
      throw BackendError("calibration circuit " + to_bitstring(j, n_qubits) + " failed: " +
                         e.what());
    }
    for (std::size_t i = 0; i < dim; ++i) {
      out.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = hist.frequency(i);
    }
  }
  return out;
}

CalibrationMatrix marginalize(const CalibrationMatrix& calibration,
                              std::span<const int> positions) {
  const int n = calibration.n_qubits;
  const int m = static_cast<int>(positions.size());
  if (m < 1 || m > n) throw ContractViolation("marginal over an invalid qubit set");
  for (int q : positions) {
    if (q < 1 || q > n) throw ContractViolation("marginal qubit outside the calibration register");
  }
  const Eigen::Index full = Eigen::Index{1} << n;
  const Eigen::Index dim = Eigen::Index{1} << m;
  CalibrationMatrix out{m, Eigen::MatrixXd::Zero(dim, dim)};
  for (Eigen::Index j = 0; j < full; ++j) {
    const auto b = static_cast<Eigen::Index>(gather_bits(static_cast<std::size_t>(j), n, positions));
    for (Eigen::Index i = 0; i < full; ++i) {
      const auto a = static_cast<Eigen::Index>(gather_bits(static_cast<std::size_t>(i), n, positions));
      out.entries(a, b) += calibration.entries(i, j);
    }
  }
  out.entries /= static_cast<double>(full / dim);
  return out;
}

QuasiDistribution mitigate_histogram(const CalibrationMatrix& calibration,
                                     const ShotHistogram& histogram,
                                     const MitigationOptions& options) {
  if (calibration.n_qubits != histogram.width()) {
    throw ContractViolation("calibration over " + std::to_string(calibration.n_qubits) +
                            " qubits applied to a " + std::to_string(histogram.width()) +
                            "-bit histogram");
  }
  const double condition = condition_number(calibration.entries);
  if (!(condition <= options.condition_bound)) {
    throw MitigationError("calibration matrix is ill-conditioned (condition " +
                              std::to_string(condition) + ")",
                          condition);
  }
  const auto freqs = histogram.frequencies();
  const Eigen::Map<const Eigen::VectorXd> measured(freqs.data(),
                                                   static_cast<Eigen::Index>(freqs.size()));
  const Eigen::VectorXd ideal = calibration.entries.partialPivLu().solve(measured);
  return {histogram.measured_qubits(), std::vector<double>(ideal.data(), ideal.data() + ideal.size())};
}

double mitigated_expectation(const CalibrationMatrix& register_calibration,
                             const ShotHistogram& histogram, const PauliTerm& term,
                             const MitigationOptions& options) {
  const auto& measured = histogram.measured_qubits();
  const CalibrationMatrix local = static_cast<int>(measured.size()) == register_calibration.n_qubits &&
                                          std::is_sorted(measured.begin(), measured.end())
                                      ? register_calibration
                                      : marginalize(register_calibration, measured);
  const auto quasi = mitigate_histogram(local, histogram, options);
  return parity_expectation(quasi.values, support_sign_mask(term, measured));
}

double estimate_bitflip_p(const CalibrationMatrix& calibration) {
  if (calibration.n_qubits < 1) throw ContractViolation("calibration has no qubits");
  return (1.0 - calibration.mean_diagonal()) / calibration.n_qubits;
}

TimeSeries mitigate_timeseries(const TimeSeries& series, MitigationMode mode,
                               const ExecutionBackend* backend, std::uint64_t seed,
                               const MitigationOptions& options,
                               std::uint64_t calibration_shots) {
  TimeSeries out = series;
  out.mitigation_mode = mode;
  const auto& terms = series.hamiltonian.terms;
  const int n = series.hamiltonian.n_qubits;
  const RngStream master(seed);

  auto ensure_calibration = [&](Packet& packet) -> const CalibrationMatrix& {
    if (!packet.calibration && backend != nullptr) {
      ExecutionContext context{packet.timestamp_min, packet.index, series.triplet};
      RngStream stream = master.split(static_cast<std::uint64_t>(packet.index));
      packet.calibration =
          estimate_calibration_matrix(*backend, n, calibration_shots, context, stream);
    }
    return require_calibration(packet.calibration, packet);
  };

  if (out.packets.empty()) return out;
  const CalibrationMatrix* job_calibration = nullptr;
  if (mode == MitigationMode::Static) job_calibration = &ensure_calibration(out.packets.front());

  for (auto& packet : out.packets) {
    const CalibrationMatrix* cal = nullptr;
    if (mode == MitigationMode::Static) cal = job_calibration;
    if (mode == MitigationMode::Dynamic) cal = &ensure_calibration(packet);
    if (cal != nullptr && cal->n_qubits != n) {
      throw MitigationError("calibration register does not match the Hamiltonian");
    }
    for (auto& r : packet.realizations) {
      if (r.histograms.size() != terms.size()) {
        throw MitigationError("realization at t=" + std::to_string(r.timestamp_min) +
                              " min has no stored histograms");
      }
      r.expectations.resize(terms.size());
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto& hist = r.histograms[t];
        r.expectations[t] =
            cal ? mitigated_expectation(*cal, hist, terms[t], options)
                : parity_expectation(hist.frequencies(),
                                     support_sign_mask(terms[t], hist.measured_qubits()));
      }
      r.energy = recompute_energy(series.hamiltonian, r.expectations);
    }
  }
  return out;
}

}  // namespace wbench
