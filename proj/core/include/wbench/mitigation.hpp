#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wbench/backend.hpp"
#include "wbench/calibration_matrix.hpp"
#include "wbench/harness.hpp"

namespace wbench {

inline constexpr double kDefaultConditionBound = 1e6;

/// Possibly negative quasi-probabilities over the measured bit strings.
struct QuasiDistribution {
  std::vector<int> measured_qubits;
  std::vector<double> values;

  double sum() const;
};

struct MitigationOptions {
  double condition_bound = kDefaultConditionBound;
};

// Prepares each of the 2^n basis states with X gates, measures every qubit
// and records the outcome frequencies as column j.
CalibrationMatrix estimate_calibration_matrix(const ExecutionBackend& backend,
                                              int n_qubits, std::uint64_t shots_per_state,
                                              const ExecutionContext& context,
                                              RngStream& stream);

// Marginal detector matrix on `positions` (1-based register qubits, in
// order). Exact for tensor-product matrices; otherwise averages over the
// prepared values of the traced-out qubits.
CalibrationMatrix marginalize(const CalibrationMatrix& calibration,
                              std::span<const int> positions);

// Solves calibration * x = frequencies with an LU factorisation. Values are
// returned unclipped. MitigationError if the 2-norm condition number exceeds
// the bound; ContractViolation on a dimension mismatch.
QuasiDistribution mitigate_histogram(const CalibrationMatrix& calibration,
                                     const ShotHistogram& histogram,
                                     const MitigationOptions& options = {});

// Marginalises `register_calibration` to the histogram's measured qubits,
// mitigates, then applies the parity sign over the term's support.
double mitigated_expectation(const CalibrationMatrix& register_calibration,
                             const ShotHistogram& histogram, const PauliTerm& term,
                             const MitigationOptions& options = {});

// p = (1 - mean diagonal) / n, the linearised bit-flip probability.
double estimate_bitflip_p(const CalibrationMatrix& calibration);

// Static: the first packet's calibration serves the whole series. Dynamic:
// every packet uses its own. A missing matrix is measured on `backend` at the
// packet timestamp when one is given, else MitigationError. Expectations and
// energies are recomputed from the stored histograms.
TimeSeries mitigate_timeseries(const TimeSeries& series, MitigationMode mode,
                               const ExecutionBackend* backend = nullptr,
                               std::uint64_t seed = 0,
                               const MitigationOptions& options = {},
                               std::uint64_t calibration_shots = kDefaultShots);

}  // namespace wbench
