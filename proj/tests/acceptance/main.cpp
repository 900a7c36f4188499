// Acceptance criteria 1-9. One PASS/FAIL line per criterion; exit status is
// the number of failures.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "../unit/oracles.hpp"
#include "wbench/analysis.hpp"
#include "wbench/backend.hpp"
#include "wbench/config.hpp"
#include "wbench/hamiltonian.hpp"
#include "wbench/mitigation.hpp"
#include "wbench/records.hpp"

using namespace wbench;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = WBENCH_SOURCE_DIR;
const fs::path kCli = WBENCH_CLI;
const fs::path kWork = WBENCH_WORK_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

// Runs a shell command and returns its standard output; exit status in `status`.
std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("cannot run " + command);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<TimeSeries> run_config(const fs::path& config_path, std::uint64_t seed_override,
                                   bool override_seed) {
  JobConfig config = load_job_config(config_path);
  if (override_seed) config.spec.seed = seed_override;
  const auto ham = fermionic_triangle();
  if (config.backend == BackendKind::Ideal) {
    return run_job(IdealBackend(3), config.spec, ham, w_state_circuit());
  }
  const auto scenario = load_scenario(config.scenario_path);
  return run_job(EmulatedBackend(scenario, 3), config.spec, ham, w_state_circuit(),
                 scenario.delays);
}

double mean_of(const std::vector<double>& v) { return summarize(v).mean; }

// 1. Exact ground truth.
Outcome exact_ground_truth() {
  const auto ham = fermionic_triangle();
  const double energy = exact_energy(run_circuit(w_state_circuit()), ham);
  oracle::Matrix h = oracle::Matrix::Zero(8, 8);
  for (const auto& t : ham.terms) h += t.coefficient * oracle::pauli_string(t.letters);
  Eigen::SelfAdjointEigenSolver<oracle::Matrix> solver(h);
  const double lowest = solver.eigenvalues().minCoeff();
  const bool ok = std::abs(energy + 2.0) <= 1e-12 && std::abs(lowest + 2.0) <= 1e-10;
  return {ok, "E=" + fmt(energy, 17) + " min eig=" + fmt(lowest, 17)};
}

// 2. Exact column of the outcome table.
Outcome exact_column() {
  const std::map<std::string, double> pair = {
      {"00", 5.0 / 12}, {"01", 1.0 / 12}, {"10", 1.0 / 12}, {"11", 5.0 / 12}};
  const std::map<std::string, double> triple = {
      {"000", 1.0 / 3},  {"001", 0.0},      {"010", 1.0 / 12}, {"011", 1.0 / 12},
      {"100", 0.0},      {"101", 1.0 / 3},  {"110", 1.0 / 12}, {"111", 1.0 / 12}};
  const auto w = run_circuit(w_state_circuit());
  double worst = 0.0;
  int checked = 0;
  for (const auto& term : fermionic_triangle().terms) {
    const auto rot = premeasurement_circuit(term);
    StateVector s = w;
    for (const auto& g : rot.gates) s.apply(g);
    const auto dist = exact_probabilities(s, rot.measured_qubits);
    const auto& expected = rot.measured_qubits.size() == 2 ? pair : triple;
    for (const auto& [bits, p] : expected) {
      worst = std::max(worst, std::abs(dist.probability(bits) - p));
      ++checked;
    }
  }
  return {checked == 32 && worst <= 1e-12,
          std::to_string(checked) + " entries, max deviation " + fmt(worst, 3)};
}

// 3. Ideal backend statistics.
Outcome ideal_statistics() {
  JobSpec spec;
  spec.packets_per_triplet = 20;
  spec.seed = 2024;
  const auto series = run_job(IdealBackend(3), spec, fermionic_triangle(), w_state_circuit());
  const auto s = summarize(series.front().energies());
  const bool ok = s.n == 1000 && within(s.mean, -2.005, -1.995) && within(s.std, 0.02, 0.04);
  return {ok, "n=" + std::to_string(s.n) + " mean=" + fmt(s.mean, 6) + " std=" + fmt(s.std, 3)};
}

// 4. Bit-flip estimator on the analytic matrix.
Outcome bitflip_estimator() {
  const double p = 0.011;
  oracle::Matrix one(2, 2);
  one << 1 - p, p, p, 1 - p;
  oracle::Matrix lambda = oracle::Matrix::Identity(1, 1);
  for (int k = 0; k < 3; ++k) lambda = oracle::kron(lambda, one);
  const CalibrationMatrix cal{3, lambda.real()};
  const double estimate = estimate_bitflip_p(cal);
  const double propagated = propagated_readout_error(p, 3, 6);
  const bool ok = std::abs(estimate - p) <= 5e-4 && std::abs(propagated - 0.0808) <= 1e-4;
  return {ok, "p=" + fmt(estimate, 5) + " propagated=" + fmt(propagated, 5)};
}

// 5. Mitigation recovery under readout-only noise with the exact matrix.
Outcome mitigation_recovery() {
  const auto scenario = load_scenario(kSource / "scenarios/readout-only.ini");
  JobSpec spec;
  spec.packets_per_triplet = 12;
  spec.seed = 55;
  const EmulatedBackend backend(scenario, 3);
  auto series = run_job(backend, spec, fermionic_triangle(), w_state_circuit()).front();
  series.packets.front().calibration = true_confusion_matrix(scenario.readout, 3);
  const auto raw = summarize(series.energies());
  const auto mit = summarize(mitigate_timeseries(series, MitigationMode::Static).energies());
  const double se = mit.std / std::sqrt(static_cast<double>(mit.n));
  const bool ok = mit.n >= 500 && std::abs(mit.mean + 2.0) <= 3.0 * se && mit.std >= raw.std;
  return {ok, "n=" + std::to_string(mit.n) + " raw=" + fmt(raw.mean, 5) + "(" + fmt(raw.std, 3) +
                  ") mitigated=" + fmt(mit.mean, 5) + "(" + fmt(mit.std, 3) +
                  ") |dev|/se=" + fmt(std::abs(mit.mean + 2.0) / se, 3)};
}

// 6. Ehningen-like scenario.
Outcome ehningen_like() {
  const auto series = run_config(kSource / "configs/ehningen-like.ini", 0, false).front();
  const auto raw = series.energies();
  const double peak = histogram(raw).peak_center();
  const auto dynamic = mitigate_timeseries(series, MitigationMode::Dynamic).energies();
  const auto fixed = mitigate_timeseries(series, MitigationMode::Static).energies();
  const double shift = mean_of(raw) - mean_of(dynamic);
  const double static_shift = mean_of(raw) - mean_of(fixed);
  const bool ok = within(peak, -1.90, -1.75) && within(shift, 0.10, 0.16);
  return {ok, "peak=" + fmt(peak, 4) + " mean=" + fmt(mean_of(raw), 4) +
                  " dynamic shift=" + fmt(shift, 3) + " (static " + fmt(static_shift, 3) + ")"};
}

// 7. Oscillation recovery.
Outcome oscillation_recovery() {
  const auto scenario = load_scenario(kSource / "scenarios/oscillating.ini");
  const auto series = run_config(kSource / "configs/oscillating.ini", 0, false).front();
  auto fit_of = [](const TimeSeries& s) {
    std::vector<double> t, y;
    for (const auto& p : packet_points(s)) {
      t.push_back(p.time_min);
      y.push_back(p.mean);
    }
    return fit_sinusoid(t, y);
  };
  const double period = scenario.oscillation->period_min;
  const double span = series.packets.back().realizations.back().timestamp_min -
                      series.packets.front().timestamp_min;
  const auto raw = fit_of(series);
  const auto st = fit_of(mitigate_timeseries(series, MitigationMode::Static));
  const auto dy = fit_of(mitigate_timeseries(series, MitigationMode::Dynamic));
  auto close = [&](const FitResult& r) { return std::abs(r.amplitude / raw.amplitude - 1) <= 0.5; };
  const bool ok = span >= 3 * period && std::abs(raw.period / period - 1) <= 0.01 && close(st) &&
                  close(dy);
  return {ok, "periods=" + fmt(span / period, 3) + " T=" + fmt(raw.period, 5) + "+-" +
                  fmt(raw.period_error, 2) + " A raw/static/dynamic=" + fmt(raw.amplitude, 3) +
                  "/" + fmt(st.amplitude, 3) + "/" + fmt(dy.amplitude, 3)};
}

// 8. Detector correctness.
Outcome detectors() {
  const auto scenario = load_scenario(kSource / "scenarios/outliers.ini");
  int injected = 0, found = 0, false_positives = 0, constant_on_healthy = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto series = run_config(kSource / "configs/outliers.ini", seed, true);
    for (const auto& s : series) {
      std::set<int> expected;
      for (const auto& e : scenario.outliers) {
        bool hit = e.physical_qubits.empty();
        for (int q : e.physical_qubits) {
          hit = hit || std::find(s.triplet.begin(), s.triplet.end(), q) != s.triplet.end();
        }
        if (hit) expected.insert(e.packet_index);
      }
      injected += static_cast<int>(expected.size());
      const auto report = detect_outliers(s, 5.0);
      for (auto i : report.flagged) {
        if (expected.count(s.packets[i].index)) {
          ++found;
        } else {
          ++false_positives;
        }
      }
      constant_on_healthy += detect_constant(s).constant;
    }
  }
  for (const char* healthy : {"configs/ehningen-like.ini", "configs/ideal.ini"}) {
    for (const auto& s : run_config(kSource / healthy, 0, false)) {
      constant_on_healthy += detect_constant(s).constant;
    }
  }
  int faulty = 0, detected = 0;
  for (const auto& s : run_config(kSource / "configs/constant-fault.ini", 0, false)) {
    ++faulty;
    detected += detect_constant(s).constant;
  }
  const bool ok = injected > 0 && found == injected && false_positives == 0 && faulty > 0 &&
                  detected == faulty && constant_on_healthy == 0;
  return {ok, "outliers " + std::to_string(found) + "/" + std::to_string(injected) +
                  " flagged, " + std::to_string(false_positives) + " false positives; constant " +
                  std::to_string(detected) + "/" + std::to_string(faulty) + ", " +
                  std::to_string(constant_on_healthy) + " on healthy series"};
}

// Bracketed uncertainty of a "0.41(2)" cell as a number.
std::optional<std::pair<double, double>> parse_cell(const std::string& cell) {
  static const std::regex re(R"(^\s*(-?\d+)(?:\.(\d+))?\((\d+)\)\s*$)");
  std::smatch m;
  if (!std::regex_match(cell, m, re)) return std::nullopt;
  const std::string decimals = m[2].str();
  const double value = std::stod(m[1].str() + (decimals.empty() ? "" : "." + decimals));
  const double unc = std::stod(m[3].str()) * std::pow(10.0, -static_cast<int>(decimals.size()));
  return std::make_pair(value, unc);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, '|')) {
    const auto b = cell.find_first_not_of(' ');
    const auto e = cell.find_last_not_of(' ');
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

// 9. Determinism, persistence and the outcome table.
Outcome determinism_and_table() {
  const fs::path a = kWork / "run_a";
  const fs::path b = kWork / "run_b";
  fs::remove_all(a);
  fs::remove_all(b);
  const std::string config = (kSource / "configs/ehningen-like.ini").string();
  int status = 0;
  capture(kCli.string() + " run --config " + config + " --out " + a.string(), status);
  if (status != 0) return {false, "run failed"};
  capture(kCli.string() + " run --config " + config + " --out " + b.string(), status);
  const fs::path file = a / "ehningen-like.jsonl";
  const std::string text = slurp(file);
  const bool identical = status == 0 && !text.empty() && text == slurp(b / "ehningen-like.jsonl");

  std::istringstream in(text);
  const auto job = read_job(in);
  std::ostringstream again;
  write_job(again, job);
  const auto series = assemble_series(job);
  const bool lossless = again.str() == text && job.packets.size() == 31 &&
                        series.front().energies().size() == 1550;

  const std::string table = capture(kCli.string() + " table1 --in " + file.string(), status);
  if (status != 0) return {false, "table1 failed"};
  // Reference cells with their bracketed uncertainties: rows by bit string, columns
  // Y1Y2 X1X2 Y2Y3 X2X3 Y1Z2Y3 X1Z2X3.
  const std::map<std::string, std::array<const char*, 6>> reference = {
      {"+000", {"0.41(2)", "0.41(2)", "0.41(2)", "0.41(2)", "0.32(1)", "0.31(1)"}},
      {"-001", {"", "", "0.091(9)", "0.099(9)", "0.022(5)", "0.019(5)"}},
      {"-010", {"0.095(9)", "0.095(9)", "0.093(9)", "0.10(1)", "0.088(9)", "0.095(9)"}},
      {"+011", {"", "", "0.40(2)", "0.39(2)", "0.080(9)", "0.081(8)"}},
      {"-100", {"0.089(9)", "0.10(1)", "", "", "0.015(4)", "0.015(4)"}},
      {"+101", {"", "", "", "", "0.31(1)", "0.32(1)"}},
      {"+110", {"0.40(2)", "0.39(1)", "", "", "0.079(8)", "0.091(9)"}},
      {"-111", {"", "", "", "", "0.087(9)", "0.066(8)"}},
      {"<...>", {"0.63(3)", "0.60(3)", "0.63(3)", "0.60(3)", "0.58(3)", "0.61(3)"}}};
  const std::vector<std::string> columns = {"Y1Y2", "X1X2", "Y2Y3", "X2X3", "Y1Z2Y3", "X1Z2X3"};

  std::istringstream lines(table);
  std::string line;
  std::vector<std::string> header;
  int compared = 0, layout_errors = 0;
  double worst_ratio = 1.0;
  std::optional<std::pair<double, double>> energy;
  while (std::getline(lines, line)) {
    auto cells = split_cells(line);
    if (cells.empty()) continue;
    if (cells[0] == "bits\\pauli") {
      header = cells;
      continue;
    }
    const auto row = reference.find(cells[0]);
    if (row == reference.end() || header.empty()) continue;
    if (cells.size() != header.size()) {
      ++layout_errors;
      continue;
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto col = std::find(header.begin(), header.end(), columns[c]);
      if (col == header.end()) {
        ++layout_errors;
        continue;
      }
      const std::string& ours = cells[static_cast<std::size_t>(col - header.begin())];
      const std::string paper = row->second[c];
      if (paper.empty() != ours.empty()) ++layout_errors;
      if (paper.empty() || ours.empty()) continue;
      const auto p = parse_cell(paper);
      const auto o = parse_cell(ours);
      if (!p || !o) {
        ++layout_errors;
        continue;
      }
      const double ratio = o->second / p->second;
      worst_ratio = std::max({worst_ratio, ratio, 1.0 / ratio});
      ++compared;
    }
    if (cells[0] == "<...>") energy = parse_cell(cells.back());
  }
  const bool table_ok = layout_errors == 0 && compared == 38 && energy &&
                        within(energy->first, -1.90, -1.75) && worst_ratio <= 3.0;
  return {identical && lossless && table_ok,
          std::string("identical=") + (identical ? "yes" : "no") +
              " lossless=" + (lossless ? "yes" : "no") + " cells=" + std::to_string(compared) +
              " layout errors=" + std::to_string(layout_errors) + " E=" +
              (energy ? fmt(energy->first, 3) + "(" + fmt(energy->second, 2) + ")" : "?") +
              " worst std ratio=" + fmt(worst_ratio, 3)};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
    double budget_s;
  };
  const std::vector<Criterion> criteria = {
      {"exact ground truth", exact_ground_truth, 1},
      {"exact outcome column", exact_column, 1},
      {"ideal backend statistics", ideal_statistics, 60},
      {"bit-flip estimator", bitflip_estimator, 1},
      {"mitigation recovery", mitigation_recovery, 120},
      {"ehningen-like scenario", ehningen_like, 300},
      {"oscillation recovery", oscillation_recovery, 300},
      {"detector correctness", detectors, 120},
      {"determinism and persistence", determinism_and_table, 300},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  fs::create_directories(kWork);

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criteria[i].budget_s) {
      outcome.pass = false;
      outcome.detail += " over the " + fmt(criteria[i].budget_s) + " s budget";
    }
    failures += !outcome.pass;
    std::cout << "AC" << id << ' ' << (outcome.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].name << ": " << outcome.detail << " [" << fmt(seconds, 3) << " s]"
              << std::endl;
  }
  return failures;
}
