#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wbench/harness.hpp"

namespace wbench {

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n - 1)
  double min = 0.0;
  double max = 0.0;
};

SampleSummary summarize(std::span<const double> values);

struct EnergyHistogram {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  std::size_t n_samples = 0;
  double mean = 0.0;
  double std = 0.0;
  std::size_t peak_bin = 0;

  double peak_center() const;
};

// Bins start at the smallest sample; the last bin is closed. Mean and std are
// computed from the raw samples.
EnergyHistogram histogram(std::span<const double> energies, double bin_width = 0.01);

struct PacketPoint {
  double time_min = 0.0;  // mean realization timestamp
  double mean = 0.0;
  double std = 0.0;
};

std::vector<PacketPoint> packet_points(const TimeSeries& series);

struct FitOptions {
  bool with_slope = false;
  int max_iterations = 200;
  // Fits whose amplitude is below this many standard errors are rejected.
  double min_amplitude_significance = 2.0;
};

/// y0 + A sin(2 pi t / T + phi0) [+ slope * t]. A >= 0, T > 0, phi0 in [0, 2 pi).
struct FitResult {
  double offset = 0.0;
  double amplitude = 0.0;
  double period = 0.0;
  double phase = 0.0;
  double slope = 0.0;
  double offset_error = 0.0;
  double amplitude_error = 0.0;
  double period_error = 0.0;
  double phase_error = 0.0;
  double slope_error = 0.0;
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
  bool with_slope = false;

  double evaluate(double t) const;
};

// Levenberg-Marquardt from a periodogram start; falls back to five
// log-spaced period starts. FitError on degenerate input or non-convergence.
FitResult fit_sinusoid(std::span<const double> times, std::span<const double> values,
                       const FitOptions& options = {});

struct OutlierReport {
  std::vector<std::size_t> flagged;
  std::vector<double> z_scores;
  double threshold = 5.0;
};

// Robust z of packet means against their median and 1.4826 * MAD, flagged
// one-sided toward higher energy.
OutlierReport detect_outliers(std::span<const double> packet_means, double k = 5.0);
OutlierReport detect_outliers(const TimeSeries& series, double k = 5.0);

struct ConstantReport {
  bool constant = false;
  // First run of bit-identical packets, [first, last] inclusive.
  std::size_t first = 0;
  std::size_t last = 0;
};

ConstantReport detect_constant(const TimeSeries& series, std::size_t min_run = 3);

// n_qubits * p * sqrt(n_terms).
double propagated_readout_error(double p, int n_qubits, int n_terms);

struct CorrelationRow {
  std::string job_id;
  std::vector<int> triplet;
  double time_min = 0.0;
  double total_readout_error = 0.0;
  double total_gate_error = 0.0;
  double energy = 0.0;
};

struct GateCount {
  int one_qubit = 0;
  int two_qubit = 0;
};

// Gates executed for one realization: preparation plus premeasurement of
// every term.
GateCount realization_gate_count(const PauliHamiltonian& hamiltonian, const Circuit& prep);

std::vector<CorrelationRow> error_correlation_table(std::span<const TimeSeries> series,
                                                    const Circuit& prep);

/// Outcome statistics laid out per bit string of the full register.
struct OutcomeCell {
  bool present = false;
  double mean = 0.0;
  double std = 0.0;
};

struct OutcomeColumn {
  PauliTerm term;
  std::vector<OutcomeCell> cells;   // one per register bit string
  std::vector<double> exact;        // exact probability per register bit string, NaN if blank
  OutcomeCell expectation;
  double exact_expectation = 0.0;
};

struct OutcomeTable {
  int n_qubits = 0;
  std::vector<OutcomeColumn> columns;  // grouped by support size, then support
  OutcomeCell energy;
  double exact_energy = 0.0;
  std::size_t n_realizations = 0;
};

// Means and standard deviations across experiments of every outcome
// frequency, expectation and energy. Exact values come from `prep`.
OutcomeTable outcome_table(std::span<const TimeSeries> series, const Circuit& prep);

// "0.41(2)" style: uncertainty to one significant digit.
std::string format_with_uncertainty(double value, double uncertainty);
// Small-denominator fraction when one matches, else a decimal.
std::string format_exact(double value);
std::string render_outcome_table(const OutcomeTable& table);

}  // namespace wbench
