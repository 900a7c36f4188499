#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wbench/harness.hpp"
#include "wbench/noise.hpp"

namespace wbench {

enum class BackendKind { Ideal, Emulated };

std::string to_string(BackendKind kind);

/// A job as read from a sectioned key/value config file. Relative scenario
/// paths resolve against the config file's directory.
struct JobConfig {
  JobSpec spec;
  BackendKind backend = BackendKind::Ideal;
  std::filesystem::path scenario_path;
  std::string anchor = "1970-01-01T00:00:00Z";
  std::filesystem::path output_dir;
};

// ConfigError on unknown sections or keys, malformed values, or values that
// break the job contract.
JobConfig parse_job_config(std::string_view text,
                           const std::filesystem::path& base_dir = {});
JobConfig load_job_config(const std::filesystem::path& path);

TemporalScenario parse_scenario(std::string_view text);
TemporalScenario load_scenario(const std::filesystem::path& path);

}  // namespace wbench
