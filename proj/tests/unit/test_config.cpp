#include <gtest/gtest.h>

#include <filesystem>

#include "wbench/config.hpp"
#include "wbench/errors.hpp"

using namespace wbench;

#ifndef WBENCH_SOURCE_DIR
#define WBENCH_SOURCE_DIR "."
#endif

namespace {
const std::filesystem::path kSource = WBENCH_SOURCE_DIR;
}

TEST(Config, JobDefaults) {
  const auto c = parse_job_config("[job]\nid = a\nbackend = ideal\n");
  EXPECT_EQ(c.spec.job_id, "a");
  EXPECT_EQ(c.backend, BackendKind::Ideal);
  EXPECT_EQ(c.spec.shots, 1024u);
  EXPECT_EQ(c.spec.packet_size, 50);
  EXPECT_EQ(c.spec.packets_per_triplet, 31);
  EXPECT_EQ(c.spec.triplets, (std::vector<std::vector<int>>{{1, 2, 3}}));
  EXPECT_EQ(c.spec.calibration, MitigationMode::None);
}

TEST(Config, FullJob) {
  const auto c = parse_job_config(
      "# comment\n"
      "[job]\nid = j\nbackend = emulated\nscenario = s.ini\nseed = 99\n"
      "anchor = 2022-09-19T22:47:16Z\n"
      "[protocol]\ntriplets = 11 14 13; 1 2 3\npackets_per_triplet = 5\nshots = 2048\n"
      "packet_size = 10\npacket_duration_min = 12.5\nrotation = true\nmeasure_all_qubits = yes\n"
      "[mitigation]\ncalibration = dynamic\ncalibration_shots = 4096\n"
      "[output]\ndir = out\n",
      "/base");
  EXPECT_EQ(c.backend, BackendKind::Emulated);
  EXPECT_EQ(c.scenario_path, std::filesystem::path("/base/s.ini"));
  EXPECT_EQ(c.output_dir, std::filesystem::path("/base/out"));
  EXPECT_EQ(c.spec.seed, 99u);
  EXPECT_EQ(c.anchor, "2022-09-19T22:47:16Z");
  EXPECT_EQ(c.spec.triplets, (std::vector<std::vector<int>>{{11, 14, 13}, {1, 2, 3}}));
  EXPECT_EQ(c.spec.packets_per_triplet, 5);
  EXPECT_EQ(c.spec.shots, 2048u);
  EXPECT_DOUBLE_EQ(c.spec.packet_duration_min, 12.5);
  EXPECT_TRUE(c.spec.rotation);
  EXPECT_TRUE(c.spec.measure_all);
  EXPECT_EQ(c.spec.calibration, MitigationMode::Dynamic);
  EXPECT_EQ(c.spec.calibration_shots, 4096u);
}

TEST(Config, RejectsUnknownKeysAndSections) {
  EXPECT_THROW(parse_job_config("[job]\nid = a\nbackend = ideal\nshots = 5\n"), ConfigError);
  EXPECT_THROW(parse_job_config("[job]\nid = a\nbackend = ideal\n[extra]\nx = 1\n"), ConfigError);
  EXPECT_THROW(parse_job_config("[protocol]\nshots = 5\n"), ConfigError);
}

TEST(Config, RejectsBadValues) {
  EXPECT_THROW(parse_job_config("[job]\nid = a\nbackend = quantum\n"), ConfigError);
  EXPECT_THROW(parse_job_config("[job]\nid = a\nbackend = ideal\n[protocol]\nshots = many\n"),
               ConfigError);
  EXPECT_THROW(parse_job_config("[job]\nid = a\nbackend = ideal\n[protocol]\nshots = 0\n"),
               ConfigError);
  EXPECT_THROW(parse_job_config("[job]\nid = a\nbackend = emulated\n"), ConfigError);
  EXPECT_THROW(parse_job_config("[job]\nid = a\nbackend = ideal\n[protocol]\nrotation = maybe\n"),
               ConfigError);
  EXPECT_THROW(parse_job_config("[job\nid = a\n"), ConfigError);
}

TEST(Config, Scenario) {
  const auto s = parse_scenario(
      "[scenario]\nname = t\nconstant_fault = false\n"
      "[readout]\nflip_probability = 0.01, 0.02, 0.03\nreported_error = 0.011\n"
      "[gate]\none_qubit_error = 0.0004\ntwo_qubit_error = 0.008\n"
      "[oscillation]\namplitude_fraction = 0.5\nperiod_min = 121.8\napplies_to = gate\n"
      "[outlier:1]\npacket_index = 3\nextra_flip_probability = 0.05\nphysical_qubits = 3 7\n"
      "[delay:a]\npacket_index = 2\nextra_delay_min = 30\n");
  EXPECT_EQ(s.name, "t");
  EXPECT_EQ(s.readout.flip_0to1, (std::vector<double>{0.01, 0.02, 0.03}));
  EXPECT_TRUE(s.readout.is_symmetric());
  EXPECT_EQ(*s.reported.readout, (std::vector<double>{0.011}));
  EXPECT_DOUBLE_EQ(s.gate.two_qubit_error, 0.008);
  ASSERT_TRUE(s.oscillation.has_value());
  EXPECT_EQ(s.oscillation->applies_to, NoiseChannel::Gate);
  ASSERT_EQ(s.outliers.size(), 1u);
  EXPECT_EQ(s.outliers[0].physical_qubits, (std::vector<int>{3, 7}));
  ASSERT_EQ(s.delays.size(), 1u);
  EXPECT_DOUBLE_EQ(s.delays[0].extra_delay_min, 30.0);
}

TEST(Config, ScenarioRejectsBadInput) {
  EXPECT_THROW(parse_scenario("[readout]\nflip_probability = 1.5\n"), ConfigError);
  EXPECT_THROW(parse_scenario("[readout]\nflip = 0.1\n"), ConfigError);
  EXPECT_THROW(parse_scenario("[weather]\nrain = 1\n"), ConfigError);
  EXPECT_THROW(parse_scenario("[oscillation]\namplitude_fraction = 0.1\n"), ConfigError);
  EXPECT_THROW(parse_scenario("[oscillation]\namplitude_fraction = 0.1\nperiod_min = 10\n"
                              "applies_to = sometimes\n"),
               ConfigError);
}

TEST(Config, MissingFileNamesPath) {
  try {
    load_job_config("/nonexistent/job.ini");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/job.ini"), std::string::npos);
  }
}

TEST(Config, CommittedFilesParse) {
  for (const auto& entry : std::filesystem::directory_iterator(kSource / "scenarios")) {
    EXPECT_NO_THROW(load_scenario(entry.path())) << entry.path();
  }
  for (const auto& entry : std::filesystem::directory_iterator(kSource / "configs")) {
    JobConfig c;
    ASSERT_NO_THROW(c = load_job_config(entry.path())) << entry.path();
    if (c.backend == BackendKind::Emulated) {
      EXPECT_TRUE(std::filesystem::exists(c.scenario_path)) << c.scenario_path;
    }
  }
}
