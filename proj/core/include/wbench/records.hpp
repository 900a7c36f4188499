#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wbench/calibration_matrix.hpp"
#include "wbench/harness.hpp"

namespace wbench {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kDefaultAnchor = "1970-01-01T00:00:00Z";

// Fields we do not understand, kept as serialized JSON text per key so a
// round-trip reproduces them.
using ExtraFields = std::map<std::string, std::string>;

struct JobHeader {
  int schema_version = kSchemaVersion;
  std::string job_id;
  std::string anchor{kDefaultAnchor};
  std::string backend = "ideal";
  std::string scenario;
  JobSpec spec;
  PauliHamiltonian hamiltonian;
  MitigationMode mitigation_mode = MitigationMode::None;
  ExtraFields extra;
};

struct PacketRecord {
  int schema_version = kSchemaVersion;
  std::string job_id;
  std::vector<int> triplet;
  int packet_index = 0;
  // Term labels in Hamiltonian order; each realization follows this order.
  std::vector<std::string> term_labels;
  Packet packet;
  ExtraFields extra;
};

// One JSON object per line, no trailing newline.
std::string serialize_header(const JobHeader& header);
std::string serialize_packet(const PacketRecord& record);
std::string serialize_calibration(const CalibrationMatrix& calibration);

// `line_number` is reported in ParseError. SchemaVersionError when the
// record's schema_version differs from kSchemaVersion.
JobHeader parse_header(std::string_view line, std::size_t line_number = 0);
PacketRecord parse_packet(std::string_view line, std::size_t line_number = 0);
CalibrationMatrix parse_calibration(std::string_view line, std::size_t line_number = 0);

struct JobFile {
  JobHeader header;
  std::vector<PacketRecord> packets;
};

// First line is the job header, every other non-empty line a packet. A final
// line without a newline is still being appended and is ignored.
JobFile read_job(std::istream& in);
JobFile read_job_file(const std::filesystem::path& path);

// Series grouped by triplet in header order, packets in timestamp order.
std::vector<TimeSeries> assemble_series(const JobFile& file);
JobFile make_job_file(const JobHeader& header, const std::vector<TimeSeries>& series);

void write_job(std::ostream& out, const JobFile& file);
void write_job_file(const std::filesystem::path& path, const JobFile& file);

PacketRecord make_packet_record(const TimeSeries& series, std::size_t packet_index);

}  // namespace wbench
