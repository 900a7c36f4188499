#include "wbench/records.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wbench/errors.hpp"

namespace wbench {
namespace {

using json = nlohmann::ordered_json;

const std::set<std::string> kHeaderKeys = {"type",        "schema_version", "job_id",
                                           "anchor",      "backend",        "scenario",
                                           "mitigation_mode", "protocol",   "hamiltonian"};
const std::set<std::string> kPacketKeys = {"type",         "schema_version", "job_id",
                                           "triplet",      "packet_index",   "timestamp_min",
                                           "snapshot",     "calibration",    "terms",
                                           "realizations"};

json parse_line(std::string_view line, std::size_t line_number) {
  try {
    json j = json::parse(line.begin(), line.end());
    if (!j.is_object()) throw ParseError("record is not a JSON object", line_number);
    return j;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed record: ") + e.what(), line_number);
  }
}

void check_version(const json& j, std::size_t line_number) {
  if (!j.contains("schema_version")) throw ParseError("missing schema_version", line_number);
  const int version = j.at("schema_version").get<int>();
  if (version != kSchemaVersion) {
    throw SchemaVersionError("schema_version " + std::to_string(version) +
                                 " is not supported (expected " +
                                 std::to_string(kSchemaVersion) + ")",
                             line_number);
  }
}

void check_type(const json& j, std::string_view type, std::size_t line_number) {
  if (!j.contains("type") || j.at("type").get<std::string>() != type) {
    throw ParseError("expected a \"" + std::string(type) + "\" record", line_number);
  }
}

ExtraFields collect_extra(const json& j, const std::set<std::string>& known) {
  ExtraFields extra;
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) extra[key] = value.dump();
  }
  return extra;
}

void emit_extra(json& j, const ExtraFields& extra) {
  for (const auto& [key, raw] : extra) j[key] = json::parse(raw);
}

// Runs `body`, turning JSON access errors into ParseError at `line_number`.
template <typename F>
auto guarded(std::size_t line_number, F&& body) {
  try {
    return body();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), line_number);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid record: ") + e.what(), line_number);
  }
}

json histogram_to_json(const ShotHistogram& h) {
  json counts = json::object();
  for (std::size_t k = 0; k < h.outcomes(); ++k) {
    if (h.count(k) != 0) counts[h.bitstring(k)] = h.count(k);
  }
  return json{{"measured", h.measured_qubits()}, {"counts", counts}};
}

ShotHistogram histogram_from_json(const json& j) {
  ShotHistogram h(j.at("measured").get<std::vector<int>>());
  for (const auto& [bits, count] : j.at("counts").items()) {
    h.add(h.outcome_index(bits), count.get<std::uint64_t>());
  }
  return h;
}

json calibration_to_json(const CalibrationMatrix& c) {
  return json{{"n_qubits", c.n_qubits}, {"entries", c.row_major()}};
}

CalibrationMatrix calibration_from_json(const json& j) {
  const auto entries = j.at("entries").get<std::vector<double>>();
  return CalibrationMatrix::from_row_major(j.at("n_qubits").get<int>(), entries);
}

}  // namespace

std::string serialize_header(const JobHeader& h) {
  json protocol{{"triplets", h.spec.triplets},
                {"packets_per_triplet", h.spec.packets_per_triplet},
                {"shots", h.spec.shots},
                {"packet_size", h.spec.packet_size},
                {"rotation", h.spec.rotation},
                {"calibration", to_string(h.spec.calibration)},
                {"calibration_shots", h.spec.calibration_shots},
                {"packet_duration_min", h.spec.packet_duration_min},
                {"seed", h.spec.seed},
                {"measure_all_qubits", h.spec.measure_all}};
  json terms = json::array();
  for (const auto& t : h.hamiltonian.terms) {
    terms.push_back(json{{"coefficient", t.coefficient}, {"paulis", t.letters}});
  }
  json j{{"type", "job"},
         {"schema_version", h.schema_version},
         {"job_id", h.job_id},
         {"anchor", h.anchor},
         {"backend", h.backend},
         {"scenario", h.scenario},
         {"mitigation_mode", to_string(h.mitigation_mode)},
         {"protocol", protocol},
         {"hamiltonian", json{{"n_qubits", h.hamiltonian.n_qubits}, {"terms", terms}}}};
  emit_extra(j, h.extra);
  return j.dump();
}

JobHeader parse_header(std::string_view line, std::size_t line_number) {
  const json j = parse_line(line, line_number);
  check_type(j, "job", line_number);
  check_version(j, line_number);
  return guarded(line_number, [&] {
    JobHeader h;
    h.schema_version = j.at("schema_version").get<int>();
    h.job_id = j.at("job_id").get<std::string>();
    h.anchor = j.at("anchor").get<std::string>();
    h.backend = j.at("backend").get<std::string>();
    h.scenario = j.at("scenario").get<std::string>();
    h.mitigation_mode = parse_mitigation_mode(j.at("mitigation_mode").get<std::string>());
    const json& p = j.at("protocol");
    h.spec.job_id = h.job_id;
    h.spec.triplets = p.at("triplets").get<std::vector<std::vector<int>>>();
    h.spec.packets_per_triplet = p.at("packets_per_triplet").get<int>();
    h.spec.shots = p.at("shots").get<std::uint64_t>();
    h.spec.packet_size = p.at("packet_size").get<int>();
    h.spec.rotation = p.at("rotation").get<bool>();
    h.spec.calibration = parse_mitigation_mode(p.at("calibration").get<std::string>());
    h.spec.calibration_shots = p.at("calibration_shots").get<std::uint64_t>();
    h.spec.packet_duration_min = p.at("packet_duration_min").get<double>();
    h.spec.seed = p.at("seed").get<std::uint64_t>();
    h.spec.measure_all = p.at("measure_all_qubits").get<bool>();
    const json& ham = j.at("hamiltonian");
    h.hamiltonian.n_qubits = ham.at("n_qubits").get<int>();
    for (const auto& t : ham.at("terms")) {
      h.hamiltonian.terms.push_back(PauliTerm::from_letters(t.at("paulis").get<std::string>(),
                                                            t.at("coefficient").get<double>()));
    }
    h.hamiltonian.validate();
    h.extra = collect_extra(j, kHeaderKeys);
    return h;
  });
}

std::string serialize_packet(const PacketRecord& r) {
  const Packet& p = r.packet;
  json snapshot{{"timestamp_min", p.snapshot.timestamp_min},
                {"readout_error", p.snapshot.reported_readout_error},
                {"one_qubit_error", p.snapshot.reported_one_qubit_error},
                {"two_qubit_error", p.snapshot.reported_two_qubit_error}};
  json realizations = json::array();
  for (const auto& z : p.realizations) {
    json histograms = json::array();
    for (const auto& h : z.histograms) histograms.push_back(histogram_to_json(h));
    realizations.push_back(json{{"timestamp_min", z.timestamp_min},
                                {"energy", z.energy},
                                {"expectations", z.expectations},
                                {"histograms", histograms}});
  }
  json j{{"type", "packet"},
         {"schema_version", r.schema_version},
         {"job_id", r.job_id},
         {"triplet", r.triplet},
         {"packet_index", r.packet_index},
         {"timestamp_min", p.timestamp_min},
         {"snapshot", snapshot}};
  if (p.calibration) j["calibration"] = calibration_to_json(*p.calibration);
  j["terms"] = r.term_labels;
  j["realizations"] = realizations;
  emit_extra(j, r.extra);
  return j.dump();
}

PacketRecord parse_packet(std::string_view line, std::size_t line_number) {
  const json j = parse_line(line, line_number);
  check_type(j, "packet", line_number);
  check_version(j, line_number);
  return guarded(line_number, [&] {
    PacketRecord r;
    r.schema_version = j.at("schema_version").get<int>();
    r.job_id = j.at("job_id").get<std::string>();
    r.triplet = j.at("triplet").get<std::vector<int>>();
    r.packet_index = j.at("packet_index").get<int>();
    r.term_labels = j.at("terms").get<std::vector<std::string>>();
    Packet& p = r.packet;
    p.index = r.packet_index;
    p.timestamp_min = j.at("timestamp_min").get<double>();
    const json& s = j.at("snapshot");
    p.snapshot.timestamp_min = s.at("timestamp_min").get<double>();
    p.snapshot.reported_readout_error = s.at("readout_error").get<std::vector<double>>();
    p.snapshot.reported_one_qubit_error = s.at("one_qubit_error").get<double>();
    p.snapshot.reported_two_qubit_error = s.at("two_qubit_error").get<double>();
    if (j.contains("calibration")) p.calibration = calibration_from_json(j.at("calibration"));
    for (const auto& z : j.at("realizations")) {
      Realization real;
      real.timestamp_min = z.at("timestamp_min").get<double>();
      real.energy = z.at("energy").get<double>();
      real.expectations = z.at("expectations").get<std::vector<double>>();
      for (const auto& h : z.at("histograms")) real.histograms.push_back(histogram_from_json(h));
      if (real.expectations.size() != r.term_labels.size() ||
          (!real.histograms.empty() && real.histograms.size() != r.term_labels.size())) {
        throw ParseError("realization does not list one value per term", line_number);
      }
      p.realizations.push_back(std::move(real));
    }
    r.extra = collect_extra(j, kPacketKeys);
    return r;
  });
}

std::string serialize_calibration(const CalibrationMatrix& calibration) {
  json j{{"type", "calibration"}, {"schema_version", kSchemaVersion}};
  j.update(calibration_to_json(calibration));
  return j.dump();
}

CalibrationMatrix parse_calibration(std::string_view line, std::size_t line_number) {
  const json j = parse_line(line, line_number);
  check_type(j, "calibration", line_number);
  check_version(j, line_number);
  return guarded(line_number, [&] { return calibration_from_json(j); });
}

JobFile read_job(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  JobFile file;
  bool have_header = false;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) break;  // incomplete tail
    ++line_number;
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    if (!have_header) {
      file.header = parse_header(line, line_number);
      have_header = true;
    } else {
      file.packets.push_back(parse_packet(line, line_number));
    }
  }
  if (!have_header) throw ParseError("missing job header", line_number);
  return file;
}

JobFile read_job_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return read_job(in);
  } catch (const SchemaVersionError& e) {
    throw SchemaVersionError(path.string() + ": " + e.what(), 0);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

std::vector<TimeSeries> assemble_series(const JobFile& file) {
  std::vector<TimeSeries> out;
  auto series_for = [&](const std::vector<int>& triplet) -> TimeSeries& {
    for (auto& s : out) {
      if (s.triplet == triplet) return s;
    }
    TimeSeries s;
    s.job_id = file.header.job_id;
    s.triplet = triplet;
    s.hamiltonian = file.header.hamiltonian;
    s.mitigation_mode = file.header.mitigation_mode;
    out.push_back(std::move(s));
    return out.back();
  };
  for (const auto& t : file.header.spec.triplets) series_for(t);

  std::vector<std::string> labels;
  for (const auto& t : file.header.hamiltonian.terms) labels.push_back(t.label());
  for (const auto& record : file.packets) {
    if (record.term_labels != labels) {
      throw ParseError("packet " + std::to_string(record.packet_index) +
                           " lists terms that differ from the job Hamiltonian",
                       0);
    }
    series_for(record.triplet).packets.push_back(record.packet);
  }
  for (auto& s : out) {
    std::stable_sort(s.packets.begin(), s.packets.end(), [](const Packet& a, const Packet& b) {
      return a.timestamp_min < b.timestamp_min;
    });
  }
  return out;
}

PacketRecord make_packet_record(const TimeSeries& series, std::size_t packet_index) {
  PacketRecord r;
  r.job_id = series.job_id;
  r.triplet = series.triplet;
  r.packet = series.packets.at(packet_index);
  r.packet_index = r.packet.index;
  for (const auto& t : series.hamiltonian.terms) r.term_labels.push_back(t.label());
  return r;
}

JobFile make_job_file(const JobHeader& header, const std::vector<TimeSeries>& series) {
  JobFile file{header, {}};
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.packets.size(); ++i) {
      file.packets.push_back(make_packet_record(s, i));
    }
  }
  std::stable_sort(file.packets.begin(), file.packets.end(),
                   [](const PacketRecord& a, const PacketRecord& b) {
                     return a.packet.timestamp_min < b.packet.timestamp_min;
                   });
  return file;
}

void write_job(std::ostream& out, const JobFile& file) {
  out << serialize_header(file.header) << '\n';
  for (const auto& p : file.packets) out << serialize_packet(p) << '\n';
}

void write_job_file(const std::filesystem::path& path, const JobFile& file) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  write_job(out, file);
  if (!out) throw Error("write to " + path.string() + " failed");
}

}  // namespace wbench
