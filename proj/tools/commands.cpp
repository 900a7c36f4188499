#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>

#include "wbench/analysis.hpp"
#include "wbench/backend.hpp"
#include "wbench/config.hpp"
#include "wbench/errors.hpp"
#include "wbench/hamiltonian.hpp"
#include "wbench/mitigation.hpp"
#include "wbench/records.hpp"

namespace wbench::cli {
namespace {

// Shortest text that parses back to the same double.
std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string triplet_label(const std::vector<int>& triplet) {
  std::string out;
  for (std::size_t i = 0; i < triplet.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(triplet[i]);
  }
  return out;
}

std::unique_ptr<ExecutionBackend> make_backend(BackendKind kind,
                                               const std::optional<TemporalScenario>& scenario,
                                               int n_qubits) {
  if (kind == BackendKind::Ideal) return std::make_unique<IdealBackend>(n_qubits);
  if (!scenario) throw ConfigError("emulated backend needs a scenario");
  return std::make_unique<EmulatedBackend>(*scenario, n_qubits);
}

std::vector<TimeSeries> load_series(const std::vector<Path>& inputs) {
  std::vector<TimeSeries> all;
  for (const auto& path : inputs) {
    auto series = assemble_series(read_job_file(path));
    for (auto& s : series) all.push_back(std::move(s));
  }
  return all;
}

}  // namespace

int run(const RunArgs& args, std::ostream& out) {
  const JobConfig config = load_job_config(args.config);
  std::optional<TemporalScenario> scenario;
  if (config.backend == BackendKind::Emulated) scenario = load_scenario(config.scenario_path);

  const PauliHamiltonian ham = fermionic_triangle();
  const Circuit prep = w_state_circuit();
  const auto backend = make_backend(config.backend, scenario, ham.n_qubits);

  JobHeader header;
  header.job_id = config.spec.job_id;
  header.anchor = config.anchor;
  header.backend = to_string(config.backend);
  header.scenario = scenario ? scenario->name : "ideal";
  header.spec = config.spec;
  header.hamiltonian = ham;

  Path dir = args.out_dir ? *args.out_dir
                          : (config.output_dir.empty() ? Path(".") : config.output_dir);
  std::filesystem::create_directories(dir);
  const Path path = dir / (config.spec.job_id + ".jsonl");
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot write " + path.string());

  file << serialize_header(header) << '\n' << std::flush;
  std::size_t written = 0;
  const auto series = run_job(*backend, config.spec, ham, prep,
                              scenario ? scenario->delays : std::vector<DelayEvent>{},
                              [&](const TimeSeries& ts, const Packet&) {
                                file << serialize_packet(make_packet_record(
                                            ts, ts.packets.size() - 1))
                                     << '\n'
                                     << std::flush;
                                ++written;
                              });
  if (!file) throw Error("write to " + path.string() + " failed");

  int discarded = 0;
  for (const auto& s : series) discarded += s.discarded_packets;
  out << "wrote " << path.string() << " (" << written << " packets";
  if (discarded) out << ", " << discarded << " discarded";
  out << ")\n";
  return 0;
}

int calibrate(const CalibrateArgs& args, std::ostream& out) {
  const BackendKind kind = args.backend == "ideal" ? BackendKind::Ideal : BackendKind::Emulated;
  std::optional<TemporalScenario> scenario;
  if (args.scenario) scenario = load_scenario(*args.scenario);
  const auto backend = make_backend(kind, scenario, args.qubits);
  RngStream stream = RngStream(args.seed).split("calibration");
  const ExecutionContext context{args.time_min, -1, {}};
  const auto cal = estimate_calibration_matrix(*backend, args.qubits, args.shots, context, stream);
  out << serialize_calibration(cal) << '\n';
  return 0;
}

int mitigate(const MitigateArgs& args, std::ostream& out) {
  JobFile file = read_job_file(args.in);
  const MitigationMode mode = parse_mitigation_mode(args.mode);
  std::unique_ptr<ExecutionBackend> backend;
  if (args.scenario) {
    backend = std::make_unique<EmulatedBackend>(load_scenario(*args.scenario),
                                                file.header.hamiltonian.n_qubits);
  }
  MitigationOptions options;
  options.condition_bound = args.condition_bound;

  std::vector<TimeSeries> mitigated;
  for (const auto& s : assemble_series(file)) {
    mitigated.push_back(mitigate_timeseries(s, mode, backend.get(), args.seed, options,
                                            file.header.spec.calibration_shots));
  }
  JobHeader header = file.header;
  header.mitigation_mode = mode;
  if (args.out.has_parent_path()) std::filesystem::create_directories(args.out.parent_path());
  write_job_file(args.out, make_job_file(header, mitigated));
  out << "wrote " << args.out.string() << " (" << to_string(mode) << ")\n";
  return 0;
}

int analyze(const AnalyzeArgs& args, std::ostream& out) {
  const auto series = load_series(args.inputs);
  if (args.hist) {
    std::vector<double> energies;
    for (const auto& s : series) {
      const auto e = s.energies();
      energies.insert(energies.end(), e.begin(), e.end());
    }
    const auto h = histogram(energies, args.bin_width);
    out << "bin_low_energy_t,bin_high_energy_t,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      out << num(h.bin_edges[b]) << ',' << num(h.bin_edges[b + 1]) << ',' << h.counts[b] << '\n';
    }
  } else if (args.summary) {
    out << "job_id,triplet,mitigation,n_realizations,mean_energy_t,std_energy_t,"
           "min_energy_t,max_energy_t,peak_energy_t\n";
    for (const auto& s : series) {
      const auto e = s.energies();
      const auto sum = summarize(e);
      const auto h = histogram(e);
      out << s.job_id << ',' << triplet_label(s.triplet) << ',' << to_string(s.mitigation_mode)
          << ',' << sum.n << ',' << num(sum.mean) << ',' << num(sum.std) << ',' << num(sum.min)
          << ',' << num(sum.max) << ',' << num(h.peak_center()) << '\n';
    }
  } else if (args.correlate) {
    out << "job_id,triplet,time_min,total_readout_error,total_gate_error,energy_t\n";
    for (const auto& row : error_correlation_table(series, w_state_circuit())) {
      out << row.job_id << ',' << triplet_label(row.triplet) << ',' << num(row.time_min) << ','
          << num(row.total_readout_error) << ',' << num(row.total_gate_error) << ','
          << num(row.energy) << '\n';
    }
  } else {
    out << "job_id,triplet,packet_index,time_min,mean_energy_t,std_energy_t\n";
    for (const auto& s : series) {
      const auto points = packet_points(s);
      for (std::size_t i = 0; i < points.size(); ++i) {
        out << s.job_id << ',' << triplet_label(s.triplet) << ',' << s.packets[i].index << ','
            << num(points[i].time_min) << ',' << num(points[i].mean) << ','
            << num(points[i].std) << '\n';
      }
    }
  }
  return 0;
}

int fit(const FitArgs& args, std::ostream& out) {
  const auto series = load_series({args.in});
  FitOptions options;
  options.with_slope = args.with_slope;
  bool first = true;
  for (const auto& s : series) {
    std::vector<double> times;
    std::vector<double> means;
    for (const auto& p : packet_points(s)) {
      times.push_back(p.time_min);
      means.push_back(p.mean);
    }
    const FitResult r = fit_sinusoid(times, means, options);
    if (!first) out << '\n';
    first = false;
    out << "triplet=" << triplet_label(s.triplet) << '\n'
        << "offset_energy_t=" << num(r.offset) << " +- " << num(r.offset_error) << '\n'
        << "amplitude_energy_t=" << num(r.amplitude) << " +- " << num(r.amplitude_error) << '\n'
        << "period_min=" << num(r.period) << " +- " << num(r.period_error) << '\n'
        << "phase_rad=" << num(r.phase) << " +- " << num(r.phase_error) << '\n';
    if (r.with_slope) {
      out << "slope_energy_t_per_min=" << num(r.slope) << " +- " << num(r.slope_error) << '\n';
    }
    out << "residual_rms_energy_t=" << num(r.residual_rms) << '\n'
        << "iterations=" << r.iterations << '\n';
  }
  return 0;
}

int detect(const DetectArgs& args, std::ostream& out) {
  const auto series = load_series({args.in});
  if (args.outliers) {
    out << "triplet,packet_index,time_min,mean_energy_t,robust_z,flagged\n";
    for (const auto& s : series) {
      const auto report = detect_outliers(s, args.k);
      const auto points = packet_points(s);
      for (std::size_t i = 0; i < points.size(); ++i) {
        const bool flagged =
            std::find(report.flagged.begin(), report.flagged.end(), i) != report.flagged.end();
        out << triplet_label(s.triplet) << ',' << s.packets[i].index << ','
            << num(points[i].time_min) << ',' << num(points[i].mean) << ','
            << num(report.z_scores[i]) << ',' << (flagged ? 1 : 0) << '\n';
      }
    }
  } else {
    out << "triplet,constant,first_packet,last_packet\n";
    for (const auto& s : series) {
      const auto report = detect_constant(s);
      out << triplet_label(s.triplet) << ',' << (report.constant ? 1 : 0) << ',';
      if (report.constant) {
        out << s.packets[report.first].index << ',' << s.packets[report.last].index;
      } else {
        out << ',';
      }
      out << '\n';
    }
  }
  return 0;
}

int table1(const Table1Args& args, std::ostream& out) {
  const auto series = load_series(args.inputs);
  out << render_outcome_table(outcome_table(series, w_state_circuit()));
  return 0;
}

int sweep(const SweepArgs& args, std::ostream& out) {
  const TemporalScenario base = load_scenario(args.scenario);
  const PauliHamiltonian ham = fermionic_triangle();
  const Circuit prep = w_state_circuit();
  out << "two_qubit_error,raw_mean_energy_t,raw_peak_energy_t,mitigated_mean_energy_t,"
         "shift_energy_t\n";
  for (double e2 : args.two_qubit_errors) {
    TemporalScenario scenario = base;
    scenario.gate.two_qubit_error = e2;
    scenario.validate();
    const EmulatedBackend backend(scenario, ham.n_qubits);
    JobSpec spec;
    spec.job_id = "sweep";
    spec.packets_per_triplet = args.packets;
    spec.calibration = MitigationMode::Dynamic;
    spec.seed = args.seed;
    const auto series = run_job(backend, spec, ham, prep, scenario.delays);
    const auto raw = series.front().energies();
    const auto mitigated =
        mitigate_timeseries(series.front(), MitigationMode::Dynamic).energies();
    const double raw_mean = summarize(raw).mean;
    const double mit_mean = summarize(mitigated).mean;
    out << num(e2) << ',' << num(raw_mean) << ',' << num(histogram(raw).peak_center()) << ','
        << num(mit_mean) << ',' << num(raw_mean - mit_mean) << '\n';
  }
  return 0;
}

}  // namespace wbench::cli
