#include "wbench/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

#include <Eigen/Dense>

#include "wbench/errors.hpp"
#include "wbench/hamiltonian.hpp"

namespace wbench {

SampleSummary summarize(std::span<const double> values) {
  if (values.empty()) throw ContractViolation("summary of an empty sample");
  SampleSummary s;
  s.n = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.n);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = s.n > 1 ? std::sqrt(ss / static_cast<double>(s.n - 1)) : 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

double EnergyHistogram::peak_center() const {
  return 0.5 * (bin_edges.at(peak_bin) + bin_edges.at(peak_bin + 1));
}

EnergyHistogram histogram(std::span<const double> energies, double bin_width) {
  if (energies.empty()) throw ContractViolation("histogram of an empty sample");
  if (!(bin_width > 0.0)) throw ContractViolation("bin width must be positive");
  const auto summary = summarize(energies);
  const auto n_bins = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil((summary.max - summary.min) / bin_width - 1e-9)));

  EnergyHistogram h;
  h.bin_edges.resize(n_bins + 1);
  for (std::size_t k = 0; k <= n_bins; ++k) {
    h.bin_edges[k] = summary.min + static_cast<double>(k) * bin_width;
  }
  h.counts.assign(n_bins, 0);
  for (double e : energies) {
    auto k = static_cast<std::size_t>((e - summary.min) / bin_width);
    h.counts[std::min(k, n_bins - 1)]++;
  }
  h.n_samples = energies.size();
  h.mean = summary.mean;
  h.std = summary.std;
  h.peak_bin = static_cast<std::size_t>(
      std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin());
  return h;
}

std::vector<PacketPoint> packet_points(const TimeSeries& series) {
  std::vector<PacketPoint> out;
  for (const auto& packet : series.packets) {
    if (packet.realizations.empty()) continue;
    std::vector<double> energies;
    double t = 0.0;
    for (const auto& r : packet.realizations) {
      energies.push_back(r.energy);
      t += r.timestamp_min;
    }
    const auto s = summarize(energies);
    out.push_back({t / static_cast<double>(energies.size()), s.mean, s.std});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sinusoid fit

double FitResult::evaluate(double t) const {
  return offset + amplitude * std::sin(2.0 * std::numbers::pi * t / period + phase) + slope * t;
}

namespace {

struct FitState {
  Eigen::VectorXd params;  // y0, A, omega, phi [, slope], centred time
  double rss = 0.0;
  int iterations = 0;
  bool converged = false;
};

class SinusoidProblem {
 public:
  SinusoidProblem(std::span<const double> times, std::span<const double> values, bool slope)
      : slope_(slope), n_(static_cast<Eigen::Index>(times.size())) {
    t_mean_ = std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(n_);
    t_.resize(n_);
    y_.resize(n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
      t_(i) = times[static_cast<std::size_t>(i)] - t_mean_;
      y_(i) = values[static_cast<std::size_t>(i)];
    }
  }

  Eigen::Index n_params() const { return slope_ ? 5 : 4; }
  Eigen::Index n_points() const { return n_; }
  double t_mean() const { return t_mean_; }
  const Eigen::VectorXd& t() const { return t_; }

  Eigen::VectorXd residuals(const Eigen::VectorXd& p) const {
    Eigen::VectorXd r(n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
      double model = p(0) + p(1) * std::sin(p(2) * t_(i) + p(3));
      if (slope_) model += p(4) * t_(i);
      r(i) = y_(i) - model;
    }
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& p) const {
    Eigen::MatrixXd j(n_, n_params());
    for (Eigen::Index i = 0; i < n_; ++i) {
      const double arg = p(2) * t_(i) + p(3);
      j(i, 0) = 1.0;
      j(i, 1) = std::sin(arg);
      j(i, 2) = p(1) * t_(i) * std::cos(arg);
      j(i, 3) = p(1) * std::cos(arg);
      if (slope_) j(i, 4) = t_(i);
    }
    return j;
  }

  // Linear least squares at fixed omega; returns the full parameter vector
  // and its residual sum of squares.
  std::pair<Eigen::VectorXd, double> linear_start(double omega) const {
    const Eigen::Index cols = slope_ ? 4 : 3;
    Eigen::MatrixXd a(n_, cols);
    for (Eigen::Index i = 0; i < n_; ++i) {
      a(i, 0) = 1.0;
      a(i, 1) = std::sin(omega * t_(i));
      a(i, 2) = std::cos(omega * t_(i));
      if (slope_) a(i, 3) = t_(i);
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y_);
    Eigen::VectorXd p(n_params());
    p(0) = c(0);
    p(1) = std::hypot(c(1), c(2));
    p(2) = omega;
    p(3) = std::atan2(c(2), c(1));
    if (slope_) p(4) = c(3);
    return {p, (y_ - a * c).squaredNorm()};
  }

  FitState levenberg_marquardt(Eigen::VectorXd p, int max_iterations) const {
    FitState state{p, residuals(p).squaredNorm(), 0, false};
    double lambda = 1e-3;
    for (int it = 0; it < max_iterations; ++it) {
      state.iterations = it + 1;
      const Eigen::MatrixXd j = jacobian(state.params);
      const Eigen::VectorXd r = residuals(state.params);
      const Eigen::MatrixXd jtj = j.transpose() * j;
      const Eigen::VectorXd jtr = j.transpose() * r;
      bool accepted = false;
      while (lambda < 1e12) {
        Eigen::MatrixXd damped = jtj;
        damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
        const Eigen::VectorXd step = damped.ldlt().solve(jtr);
        const Eigen::VectorXd trial = state.params + step;
        const double trial_rss = trial(2) > 0.0 && step.allFinite()
                                     ? residuals(trial).squaredNorm()
                                     : std::numeric_limits<double>::infinity();
        if (trial_rss < state.rss) {
          const double decrease = (state.rss - trial_rss) / std::max(state.rss, 1e-300);
          const double step_size = step.norm() / (state.params.norm() + 1e-300);
          state.params = trial;
          state.rss = trial_rss;
          lambda = std::max(lambda / 10.0, 1e-12);
          accepted = true;
          if (decrease < 1e-12 || step_size < 1e-12) {
            state.converged = true;
            return state;
          }
          break;
        }
        lambda *= 10.0;
      }
      if (!accepted) {
        // No downhill step at any damping: a stationary point.
        state.converged = jtr.norm() <= 1e-6 * (j.norm() * r.norm() + 1e-300);
        return state;
      }
    }
    return state;
  }

 private:
  bool slope_;
  Eigen::Index n_;
  double t_mean_ = 0.0;
  Eigen::VectorXd t_;
  Eigen::VectorXd y_;
};

double wrap_phase(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  return phi;
}

}  // namespace

FitResult fit_sinusoid(std::span<const double> times, std::span<const double> values,
                       const FitOptions& options) {
  if (times.size() != values.size()) throw ContractViolation("times and values differ in length");
  if (times.size() < 8) throw ContractViolation("sinusoid fit needs at least 8 points");
  const auto [t_lo, t_hi] = std::minmax_element(times.begin(), times.end());
  const double span = *t_hi - *t_lo;
  if (!(span > 0.0)) throw ContractViolation("sinusoid fit needs distinct times");
  for (double v : values) {
    if (!std::isfinite(v)) throw ContractViolation("non-finite value in fit input");
  }

  const auto summary = summarize(values);
  if (summary.std <= 1e-12 * std::max(1.0, std::abs(summary.mean))) {
    throw FitError("degenerate input: series is constant");
  }

  const SinusoidProblem problem(times, values, options.with_slope);
  const auto n = static_cast<double>(times.size());
  const double min_period = 2.0 * span / (n - 1.0);
  const double max_period = span;

  // Dominant peak of the least-squares spectrum of the (detrended) series.
  const double f_lo = 1.0 / max_period;
  const double f_hi = 1.0 / min_period;
  const double df = 1.0 / (10.0 * span);
  double best_rss = std::numeric_limits<double>::infinity();
  double best_omega = 2.0 * std::numbers::pi * f_lo;
  for (double f = f_lo; f <= f_hi + 0.5 * df; f += df) {
    const double omega = 2.0 * std::numbers::pi * f;
    const double rss = problem.linear_start(omega).second;
    if (rss < best_rss) {
      best_rss = rss;
      best_omega = omega;
    }
  }

  FitState best = problem.levenberg_marquardt(problem.linear_start(best_omega).first,
                                              options.max_iterations);
  std::ostringstream diagnostics;
  diagnostics << "start T=" << 2.0 * std::numbers::pi / best_omega << " rss=" << best.rss
              << " converged=" << best.converged << "; ";
  if (!best.converged) {
    // Multi-start over log-spaced periods.
    for (int k = 0; k < 5; ++k) {
      const double period = min_period * std::pow(max_period / min_period, k / 4.0);
      FitState trial = problem.levenberg_marquardt(
          problem.linear_start(2.0 * std::numbers::pi / period).first, options.max_iterations);
      diagnostics << "start T=" << period << " rss=" << trial.rss
                  << " converged=" << trial.converged << "; ";
      if (trial.converged && (!best.converged || trial.rss < best.rss)) best = trial;
    }
  }
  if (!best.converged) throw FitError("sinusoid fit did not converge", diagnostics.str());

  Eigen::VectorXd p = best.params;
  if (p(1) < 0.0) {
    p(1) = -p(1);
    p(3) += std::numbers::pi;
  }
  const Eigen::Index np = problem.n_params();
  const double dof = std::max(1.0, n - static_cast<double>(np));
  const Eigen::MatrixXd j = problem.jacobian(p);
  const Eigen::MatrixXd cov_centered =
      (best.rss / dof) * (j.transpose() * j).ldlt().solve(Eigen::MatrixXd::Identity(np, np));

  // Centred parameters -> reported (y0, A, T, phi [, slope]) at absolute time.
  const double tm = problem.t_mean();
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(np, np);
  g(2, 2) = -2.0 * std::numbers::pi / (p(2) * p(2));
  g(3, 2) = -tm;
  if (options.with_slope) g(0, 4) = -tm;
  const Eigen::MatrixXd cov = g * cov_centered * g.transpose();

  FitResult out;
  out.with_slope = options.with_slope;
  out.slope = options.with_slope ? p(4) : 0.0;
  out.offset = p(0) - out.slope * tm;
  out.amplitude = p(1);
  out.period = 2.0 * std::numbers::pi / p(2);
  out.phase = wrap_phase(p(3) - p(2) * tm);
  out.offset_error = std::sqrt(std::max(0.0, cov(0, 0)));
  out.amplitude_error = std::sqrt(std::max(0.0, cov(1, 1)));
  out.period_error = std::sqrt(std::max(0.0, cov(2, 2)));
  out.phase_error = std::sqrt(std::max(0.0, cov(3, 3)));
  out.slope_error = options.with_slope ? std::sqrt(std::max(0.0, cov(4, 4))) : 0.0;
  out.residual_rms = std::sqrt(best.rss / n);
  out.iterations = best.iterations;
  out.converged = true;

  if (out.amplitude <= options.min_amplitude_significance * out.amplitude_error) {
    throw FitError("amplitude indistinguishable from zero",
                   "A=" + std::to_string(out.amplitude) + " +- " +
                       std::to_string(out.amplitude_error));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Detectors

namespace {

double median(std::vector<double> v) {
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

bool same_content(const Packet& a, const Packet& b) {
  if (a.realizations.size() != b.realizations.size() || a.realizations.empty()) return false;
  for (std::size_t i = 0; i < a.realizations.size(); ++i) {
    const auto& x = a.realizations[i];
    const auto& y = b.realizations[i];
    if (x.energy != y.energy || x.expectations != y.expectations ||
        x.histograms != y.histograms) {
      return false;
    }
  }
  return true;
}

}  // namespace

OutlierReport detect_outliers(std::span<const double> packet_means, double k) {
  if (packet_means.size() < 5) throw ContractViolation("outlier detection needs at least 5 packets");
  const std::vector<double> means(packet_means.begin(), packet_means.end());
  const double center = median(means);
  std::vector<double> deviations;
  for (double m : means) deviations.push_back(std::abs(m - center));
  double scale = 1.4826 * median(deviations);
  if (scale == 0.0) {
    scale = 1.2533 * std::accumulate(deviations.begin(), deviations.end(), 0.0) /
            static_cast<double>(deviations.size());
  }

  OutlierReport report;
  report.threshold = k;
  for (std::size_t i = 0; i < means.size(); ++i) {
    const double z = scale > 0.0 ? (means[i] - center) / scale : 0.0;
    report.z_scores.push_back(z);
    if (z > k) report.flagged.push_back(i);
  }
  return report;
}

OutlierReport detect_outliers(const TimeSeries& series, double k) {
  std::vector<double> means;
  for (const auto& point : packet_points(series)) means.push_back(point.mean);
  return detect_outliers(means, k);
}

ConstantReport detect_constant(const TimeSeries& series, std::size_t min_run) {
  if (series.packets.size() < 2) throw ContractViolation("constant detection needs 2 packets");
  const auto& packets = series.packets;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= packets.size(); ++i) {
    if (i < packets.size() && same_content(packets[i], packets[i - 1])) continue;
    if (i - start >= min_run) return {true, start, i - 1};
    start = i;
  }
  return {};
}

double propagated_readout_error(double p, int n_qubits, int n_terms) {
  if (p < 0.0 || n_qubits < 1 || n_terms < 1) {
    throw ContractViolation("propagated_readout_error needs p >= 0, n >= 1, terms >= 1");
  }
  return n_qubits * p * std::sqrt(static_cast<double>(n_terms));
}

GateCount realization_gate_count(const PauliHamiltonian& hamiltonian, const Circuit& prep) {
  GateCount count;
  for (const auto& term : hamiltonian.terms) {
    for (const auto& gate : prep.then(premeasurement_circuit(term)).gates) {
      (gate.is_two_qubit() ? count.two_qubit : count.one_qubit)++;
    }
  }
  return count;
}

std::vector<CorrelationRow> error_correlation_table(std::span<const TimeSeries> series,
                                                    const Circuit& prep) {
  std::vector<CorrelationRow> rows;
  for (const auto& ts : series) {
    const GateCount gates = realization_gate_count(ts.hamiltonian, prep);
    for (const auto& packet : ts.packets) {
      if (packet.snapshot.reported_readout_error.empty()) {
        throw ContractViolation("packet " + std::to_string(packet.index) + " of triplet has no device snapshot");
      }
      const double readout = packet.snapshot.total_readout_error();
      const double gate = gates.one_qubit * packet.snapshot.reported_one_qubit_error +
                          gates.two_qubit * packet.snapshot.reported_two_qubit_error;
      for (const auto& r : packet.realizations) {
        rows.push_back({ts.job_id, ts.triplet, r.timestamp_min, readout, gate, r.energy});
      }
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Outcome table

namespace {

// Register row -> outcome index of a histogram measuring `measured`, or
// nothing when the row sets an unmeasured qubit.
std::optional<std::size_t> row_outcome(std::size_t row, int n, const std::vector<int>& measured) {
  std::size_t outcome = 0;
  for (int q = 1; q <= n; ++q) {
    const bool bit = (row >> (n - q)) & 1U;
    const bool is_measured = std::find(measured.begin(), measured.end(), q) != measured.end();
    if (bit && !is_measured) return std::nullopt;
  }
  for (int q : measured) outcome = (outcome << 1) | ((row >> (n - q)) & 1U);
  return outcome;
}

OutcomeCell cell_of(const std::vector<double>& values) {
  const auto s = summarize(values);
  return {true, s.mean, s.std};
}

}  // namespace

OutcomeTable outcome_table(std::span<const TimeSeries> series, const Circuit& prep) {
  if (series.empty()) throw ContractViolation("outcome table needs at least one series");
  const auto& hamiltonian = series.front().hamiltonian;
  for (const auto& ts : series) {
    if (ts.hamiltonian.terms != hamiltonian.terms) {
      throw ContractViolation("series carry different Hamiltonians");
    }
  }
  const int n = hamiltonian.n_qubits;
  const std::size_t rows = std::size_t{1} << n;

  std::vector<const Realization*> realizations;
  for (const auto& ts : series) {
    for (const auto& p : ts.packets) {
      for (const auto& r : p.realizations) realizations.push_back(&r);
    }
  }
  if (realizations.empty()) throw ContractViolation("outcome table over empty series");

  std::vector<std::size_t> order(hamiltonian.terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto sa = hamiltonian.terms[a].support();
    const auto sb = hamiltonian.terms[b].support();
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    return sa < sb;
  });

  const StateVector prepared = run_circuit(prep);
  OutcomeTable table;
  table.n_qubits = n;
  table.n_realizations = realizations.size();
  for (std::size_t t : order) {
    const auto& term = hamiltonian.terms[t];
    const auto& measured = realizations.front()->histograms.at(t).measured_qubits();
    OutcomeColumn column;
    column.term = term;
    column.cells.resize(rows);
    column.exact.assign(rows, std::numeric_limits<double>::quiet_NaN());

    Circuit rotated = prep.then(premeasurement_circuit(term));
    const auto exact = exact_probabilities(run_circuit(rotated), measured);
    for (std::size_t row = 0; row < rows; ++row) {
      const auto outcome = row_outcome(row, n, measured);
      if (!outcome) continue;
      std::vector<double> freqs;
      for (const auto* r : realizations) freqs.push_back(r->histograms.at(t).frequency(*outcome));
      column.cells[row] = cell_of(freqs);
      column.exact[row] = exact.probabilities[*outcome];
    }
    std::vector<double> expectations;
    for (const auto* r : realizations) expectations.push_back(r->expectations.at(t));
    column.expectation = cell_of(expectations);
    column.exact_expectation = exact_expectation(prepared, term);
    table.columns.push_back(std::move(column));
  }
  std::vector<double> energies;
  for (const auto* r : realizations) energies.push_back(r->energy);
  table.energy = cell_of(energies);
  table.exact_energy = exact_energy(prepared, hamiltonian);
  return table;
}

std::string format_with_uncertainty(double value, double uncertainty) {
  std::ostringstream out;
  if (!(uncertainty > 0.0) || !std::isfinite(uncertainty)) {
    out << std::fixed << std::setprecision(4) << value;
    return out.str();
  }
  int exponent = static_cast<int>(std::floor(std::log10(uncertainty)));
  long digit = std::lround(uncertainty / std::pow(10.0, exponent));
  if (digit >= 10) {
    digit = 1;
    ++exponent;
  }
  const int decimals = std::max(0, -exponent);
  out << std::fixed << std::setprecision(decimals) << value << '(';
  if (exponent < 0) {
    out << digit;
  } else {
    out << static_cast<long>(digit * std::pow(10.0, exponent));
  }
  out << ')';
  return out.str();
}

std::string format_exact(double value) {
  if (std::isnan(value)) return "";
  for (int d = 1; d <= 64; ++d) {
    const double scaled = value * d;
    if (std::abs(scaled - std::round(scaled)) < 1e-9) {
      const long num = std::lround(scaled);
      return d == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(d);
    }
  }
  std::ostringstream out;
  out << std::setprecision(6) << value;
  return out.str();
}

std::string render_outcome_table(const OutcomeTable& table) {
  struct Col {
    std::string header;
    std::vector<std::string> cells;  // rows, then expectation row
  };
  const std::size_t rows = std::size_t{1} << table.n_qubits;
  std::vector<Col> cols;

  // Columns agree where both define a value.
  auto same_exact = [](const OutcomeColumn& a, const OutcomeColumn& b) {
    for (std::size_t i = 0; i < a.exact.size(); ++i) {
      if (std::isnan(a.exact[i]) || std::isnan(b.exact[i])) continue;
      if (std::abs(a.exact[i] - b.exact[i]) > 1e-12) return false;
    }
    return std::abs(a.exact_expectation - b.exact_expectation) <= 1e-12;
  };
  // One column covering [first, last); rows no column defines read 0 when merged.
  auto exact_col = [&](std::size_t first, std::size_t last) {
    Col col{"Exact", {}};
    const bool merged = last - first > 1;
    for (std::size_t r = 0; r < rows; ++r) {
      double v = std::numeric_limits<double>::quiet_NaN();
      for (std::size_t i = first; i < last && std::isnan(v); ++i) v = table.columns[i].exact[r];
      col.cells.push_back(std::isnan(v) && merged ? "0" : format_exact(v));
    }
    col.cells.push_back(format_exact(table.columns[first].exact_expectation));
    return col;
  };

  std::size_t begin = 0;
  while (begin < table.columns.size()) {
    const std::size_t width = table.columns[begin].term.support().size();
    std::size_t end = begin;
    while (end < table.columns.size() && table.columns[end].term.support().size() == width) ++end;
    bool shared = true;
    for (std::size_t i = begin + 1; i < end; ++i) {
      shared = shared && same_exact(table.columns[begin], table.columns[i]);
    }
    for (std::size_t i = begin; i < end; ++i) {
      const auto& c = table.columns[i];
      Col col{c.term.label(), {}};
      for (std::size_t r = 0; r < rows; ++r) {
        col.cells.push_back(c.cells[r].present ? format_with_uncertainty(c.cells[r].mean, c.cells[r].std)
                                               : "");
      }
      col.cells.push_back(format_with_uncertainty(c.expectation.mean, c.expectation.std));
      cols.push_back(std::move(col));
      if (!shared) cols.push_back(exact_col(i, i + 1));
    }
    if (shared) cols.push_back(exact_col(begin, end));
    begin = end;
  }
  Col energy{"E", std::vector<std::string>(rows, "")};
  energy.cells.push_back(format_with_uncertainty(table.energy.mean, table.energy.std));
  cols.push_back(std::move(energy));

  std::vector<std::string> labels;
  for (std::size_t r = 0; r < rows; ++r) {
    labels.push_back(std::string(std::popcount(r) % 2 ? "-" : "+") + to_bitstring(r, table.n_qubits));
  }
  labels.push_back("<...>");

  std::size_t label_width = std::string("bits\\pauli").size();
  for (const auto& l : labels) label_width = std::max(label_width, l.size());
  std::vector<std::size_t> widths;
  for (const auto& c : cols) {
    std::size_t w = c.header.size();
    for (const auto& s : c.cells) w = std::max(w, s.size());
    widths.push_back(w);
  }

  std::ostringstream out;
  auto line = [&](const std::string& label, auto cell_of_col) {
    out << std::left << std::setw(static_cast<int>(label_width)) << label;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out << " | " << std::right << std::setw(static_cast<int>(widths[c])) << cell_of_col(c);
    }
    out << '\n';
  };
  line("bits\\pauli", [&](std::size_t c) { return cols[c].header; });
  std::size_t rule = label_width;
  for (auto w : widths) rule += w + 3;
  out << std::string(rule, '-') << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    line(labels[r], [&](std::size_t c) { return cols[c].cells[r]; });
  }
  out << std::string(rule, '-') << '\n';
  line(labels.back(), [&](std::size_t c) { return cols[c].cells[rows]; });
  out << "realizations: " << table.n_realizations
      << ", exact energy: " << format_exact(table.exact_energy) << '\n';
  return out.str();
}

}  // namespace wbench
