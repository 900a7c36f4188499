#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wbench::cli {

using Path = std::filesystem::path;

struct RunArgs {
  Path config;
  std::optional<Path> out_dir;
};

struct CalibrateArgs {
  std::string backend = "ideal";
  std::optional<Path> scenario;
  int qubits = 3;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  double time_min = 0.0;
};

struct MitigateArgs {
  Path in;
  std::string mode;
  Path out;
  std::optional<Path> scenario;
  std::uint64_t seed = 0;
  double condition_bound = 1e6;
};

struct AnalyzeArgs {
  std::vector<Path> inputs;
  bool hist = false;
  bool summary = false;
  bool correlate = false;
  bool packets = false;
  double bin_width = 0.01;
};

struct FitArgs {
  Path in;
  bool with_slope = false;
};

struct DetectArgs {
  Path in;
  bool outliers = false;
  bool constant = false;
  double k = 5.0;
};

struct Table1Args {
  std::vector<Path> inputs;
};

struct SweepArgs {
  Path scenario;
  std::vector<double> two_qubit_errors;
  int packets = 10;
  std::uint64_t seed = 0;
};

// Each returns the process exit status; library errors propagate.
int run(const RunArgs& args, std::ostream& out);
int calibrate(const CalibrateArgs& args, std::ostream& out);
int mitigate(const MitigateArgs& args, std::ostream& out);
int analyze(const AnalyzeArgs& args, std::ostream& out);
int fit(const FitArgs& args, std::ostream& out);
int detect(const DetectArgs& args, std::ostream& out);
int table1(const Table1Args& args, std::ostream& out);
int sweep(const SweepArgs& args, std::ostream& out);

}  // namespace wbench::cli
