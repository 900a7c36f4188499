#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "wbench/errors.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kOther = 1,
  kUsage = 2,
  kParse = 3,
  kConfig = 4,
  kBackend = 5,
  kFit = 6,
  kMitigation = 7,
};

}  // namespace

int main(int argc, char** argv) {
  namespace cli = wbench::cli;

  CLI::App app{"W-state energy benchmark harness"};
  app.require_subcommand(1);

  cli::RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "execute a job and stream packet records");
  run_cmd->add_option("--config", run.config, "job config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out_dir, "output directory (overrides [output] dir)");

  cli::CalibrateArgs cal;
  auto* cal_cmd = app.add_subcommand("calibrate", "measure a calibration matrix");
  cal_cmd->add_option("--backend", cal.backend, "ideal or emulated")
      ->check(CLI::IsMember({"ideal", "emulated"}));
  cal_cmd->add_option("--scenario", cal.scenario, "scenario file for the emulated backend")
      ->check(CLI::ExistingFile);
  cal_cmd->add_option("--qubits", cal.qubits, "register size")->check(CLI::Range(1, 12));
  cal_cmd->add_option("--shots", cal.shots, "shots per prepared basis state");
  cal_cmd->add_option("--seed", cal.seed, "master seed");
  cal_cmd->add_option("--time", cal.time_min, "scenario time in minutes");

  cli::MitigateArgs mit;
  auto* mit_cmd = app.add_subcommand("mitigate", "offline readout mitigation of stored histograms");
  mit_cmd->add_option("--in", mit.in, "input job file")->required()->check(CLI::ExistingFile);
  mit_cmd->add_option("--mode", mit.mode, "static or dynamic")
      ->required()
      ->check(CLI::IsMember({"static", "dynamic"}));
  mit_cmd->add_option("--out", mit.out, "output job file")->required();
  mit_cmd->add_option("--scenario", mit.scenario,
                      "scenario used to measure matrices missing from the input")
      ->check(CLI::ExistingFile);
  mit_cmd->add_option("--seed", mit.seed, "seed for matrices measured here");
  mit_cmd->add_option("--condition-bound", mit.condition_bound, "largest accepted condition number");

  cli::AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand("analyze", "emit analysis tables as CSV");
  an_cmd->add_option("--in", an.inputs, "job files")->required()->check(CLI::ExistingFile);
  auto* an_mode = an_cmd->add_option_group("table");
  an_mode->add_flag("--hist", an.hist, "energy histogram");
  an_mode->add_flag("--summary", an.summary, "per-series summary");
  an_mode->add_flag("--correlate", an.correlate, "per-packet error/energy rows");
  an_mode->add_flag("--packets", an.packets, "per-packet mean energy over time");
  an_mode->require_option(1);
  an_cmd->add_option("--bin-width", an.bin_width, "histogram bin width in energy units")
      ->check(CLI::PositiveNumber);

  cli::FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "sinusoid fit of packet means");
  fit_cmd->add_option("--in", fit.in, "job file")->required()->check(CLI::ExistingFile);
  fit_cmd->add_flag("--with-slope", fit.with_slope, "add a linear drift term");

  cli::DetectArgs det;
  auto* det_cmd = app.add_subcommand("detect", "outlier and constant-result detectors");
  det_cmd->add_option("--in", det.in, "job file")->required()->check(CLI::ExistingFile);
  auto* det_mode = det_cmd->add_option_group("detector");
  det_mode->add_flag("--outliers", det.outliers, "robust outlier packets");
  det_mode->add_flag("--constant", det.constant, "bit-identical packet runs");
  det_mode->require_option(1);
  det_cmd->add_option("--k", det.k, "robust z threshold")->check(CLI::PositiveNumber);

  cli::Table1Args t1;
  auto* t1_cmd = app.add_subcommand("table1", "per-bit-string outcome statistics");
  t1_cmd->add_option("--in", t1.inputs, "job files")->required()->check(CLI::ExistingFile);

  cli::SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "scan the two-qubit error of a scenario");
  sw_cmd->add_option("--scenario", sw.scenario, "base scenario")->required()->check(CLI::ExistingFile);
  sw_cmd->add_option("--two-qubit", sw.two_qubit_errors, "two-qubit error values")->required();
  sw_cmd->add_option("--packets", sw.packets, "packets per point")->check(CLI::PositiveNumber);
  sw_cmd->add_option("--seed", sw.seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cli::run(run, std::cout);
    if (*cal_cmd) return cli::calibrate(cal, std::cout);
    if (*mit_cmd) return cli::mitigate(mit, std::cout);
    if (*an_cmd) return cli::analyze(an, std::cout);
    if (*fit_cmd) return cli::fit(fit, std::cout);
    if (*det_cmd) return cli::detect(det, std::cout);
    if (*t1_cmd) return cli::table1(t1, std::cout);
    if (*sw_cmd) return cli::sweep(sw, std::cout);
  } catch (const wbench::ParseError& e) {
    std::cerr << "wbench: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const wbench::ConfigError& e) {
    std::cerr << "wbench: config error: " << e.what() << '\n';
    return kConfig;
  } catch (const wbench::BackendError& e) {
    std::cerr << "wbench: backend error: " << e.what() << '\n';
    return kBackend;
  } catch (const wbench::FitError& e) {
    std::cerr << "wbench: fit error: " << e.what() << '\n';
    if (!e.diagnostics().empty()) std::cerr << e.diagnostics() << '\n';
    return kFit;
  } catch (const wbench::MitigationError& e) {
    std::cerr << "wbench: mitigation error: " << e.what() << '\n';
    return kMitigation;
  } catch (const std::exception& e) {
    std::cerr << "wbench: " << e.what() << '\n';
    return kOther;
  }
  return kUsage;
}
