#include "wbench/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "wbench/errors.hpp"

namespace wbench {
namespace {

using boost::property_tree::ptree;

ptree parse_ini(std::string_view text) {
  std::istringstream in{std::string(text)};
  ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }
  return tree;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// A section whose keys must all be consumed.
class Section {
 public:
  Section(std::string name, const ptree& node) : name_(std::move(name)), node_(node) {
    for (const auto& [key, child] : node_) {
      if (!child.empty()) throw ConfigError("[" + name_ + "] nests unexpected keys");
      remaining_.insert(key);
    }
  }

  bool has(const std::string& key) const { return node_.find(key) != node_.not_found(); }

  std::string text(const std::string& key) {
    if (!has(key)) throw ConfigError("[" + name_ + "] missing key \"" + key + "\"");
    remaining_.erase(key);
    return node_.get<std::string>(key);
  }

  template <typename T>
  T get(const std::string& key) {
    const std::string raw = text(key);
    std::istringstream in(raw);
    T value{};
    in >> value;
    if (!in.fail() && !in.eof()) in >> std::ws;
    if (in.fail() || !in.eof()) {
      throw ConfigError("[" + name_ + "] " + key + ": cannot parse \"" + raw + "\"");
    }
    return value;
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) {
    return has(key) ? get<T>(key) : fallback;
  }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string raw = text(key);
    if (raw == "true" || raw == "yes" || raw == "1") return true;
    if (raw == "false" || raw == "no" || raw == "0") return false;
    throw ConfigError("[" + name_ + "] " + key + ": expected true/false, got \"" + raw + "\"");
  }

  template <typename T>
  std::vector<T> list(const std::string& key) {
    std::string raw = text(key);
    for (char& c : raw) {
      if (c == ',') c = ' ';
    }
    std::istringstream in(raw);
    std::vector<T> out;
    T value{};
    while (in >> value) out.push_back(value);
    if (!in.eof()) throw ConfigError("[" + name_ + "] " + key + ": malformed list \"" + raw + "\"");
    return out;
  }

  void finish() const {
    if (!remaining_.empty()) {
      throw ConfigError("[" + name_ + "] unknown key \"" + *remaining_.begin() + "\"");
    }
  }

 private:
  std::string name_;
  const ptree& node_;
  std::set<std::string> remaining_;
};

NoiseChannel parse_channel(const std::string& raw) {
  if (raw == "readout") return NoiseChannel::Readout;
  if (raw == "gate") return NoiseChannel::Gate;
  if (raw == "both") return NoiseChannel::Both;
  throw ConfigError("[oscillation] applies_to must be readout, gate or both");
}

std::vector<std::vector<int>> parse_triplets(const std::string& raw) {
  std::vector<std::vector<int>> out;
  std::istringstream groups(raw);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::istringstream in(group);
    std::vector<int> triplet;
    int q = 0;
    while (in >> q) triplet.push_back(q);
    if (!in.eof()) throw ConfigError("[protocol] triplets: malformed \"" + raw + "\"");
    if (!triplet.empty()) out.push_back(std::move(triplet));
  }
  return out;
}

}  // namespace

std::string to_string(BackendKind kind) {
  return kind == BackendKind::Ideal ? "ideal" : "emulated";
}

TemporalScenario parse_scenario(std::string_view text) {
  const ptree tree = parse_ini(text);
  TemporalScenario s;
  for (const auto& [name, node] : tree) {
    if (node.empty() && !node.data().empty()) {
      throw ConfigError("key \"" + name + "\" outside any section");
    }
    Section section(name, node);
    if (name == "scenario") {
      s.name = section.has("name") ? section.text("name") : s.name;
      s.constant_fault = section.flag("constant_fault", false);
    } else if (name == "readout") {
      if (section.has("flip_probability")) {
        s.readout = ReadoutNoise::symmetric(section.list<double>("flip_probability"));
      }
      if (section.has("flip_probability_1to0")) {
        s.readout.flip_1to0 = section.list<double>("flip_probability_1to0");
        if (s.readout.flip_0to1.empty()) {
          throw ConfigError("[readout] flip_probability_1to0 needs flip_probability");
        }
      }
      if (section.has("reported_error")) s.reported.readout = section.list<double>("reported_error");
    } else if (name == "gate") {
      s.gate.one_qubit_error = section.get_or("one_qubit_error", 0.0);
      s.gate.two_qubit_error = section.get_or("two_qubit_error", 0.0);
      if (section.has("reported_one_qubit_error")) {
        s.reported.one_qubit_error = section.get<double>("reported_one_qubit_error");
      }
      if (section.has("reported_two_qubit_error")) {
        s.reported.two_qubit_error = section.get<double>("reported_two_qubit_error");
      }
    } else if (name == "oscillation") {
      Oscillation osc;
      osc.amplitude_fraction = section.get<double>("amplitude_fraction");
      osc.period_min = section.get<double>("period_min");
      osc.phase_rad = section.get_or("phase_rad", 0.0);
      osc.applies_to = section.has("applies_to") ? parse_channel(section.text("applies_to"))
                                                 : NoiseChannel::Both;
      s.oscillation = osc;
    } else if (name.rfind("outlier:", 0) == 0) {
      OutlierEvent e;
      e.packet_index = section.get<int>("packet_index");
      e.extra_flip_probability = section.get<double>("extra_flip_probability");
      if (section.has("physical_qubits")) e.physical_qubits = section.list<int>("physical_qubits");
      s.outliers.push_back(std::move(e));
    } else if (name.rfind("delay:", 0) == 0) {
      DelayEvent d;
      d.packet_index = section.get<int>("packet_index");
      d.extra_delay_min = section.get<double>("extra_delay_min");
      s.delays.push_back(d);
    } else {
      throw ConfigError("unknown scenario section [" + name + "]");
    }
    section.finish();
  }
  s.validate();
  return s;
}

TemporalScenario load_scenario(const std::filesystem::path& path) {
  try {
    return parse_scenario(read_text(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

JobConfig parse_job_config(std::string_view text, const std::filesystem::path& base_dir) {
  const ptree tree = parse_ini(text);
  JobConfig c;
  bool saw_job = false;
  for (const auto& [name, node] : tree) {
    if (node.empty() && !node.data().empty()) {
      throw ConfigError("key \"" + name + "\" outside any section");
    }
    Section section(name, node);
    if (name == "job") {
      saw_job = true;
      c.spec.job_id = section.text("id");
      const std::string backend = section.text("backend");
      if (backend == "ideal") {
        c.backend = BackendKind::Ideal;
      } else if (backend == "emulated") {
        c.backend = BackendKind::Emulated;
      } else {
        throw ConfigError("[job] backend must be ideal or emulated");
      }
      if (section.has("scenario")) c.scenario_path = base_dir / section.text("scenario");
      c.spec.seed = section.get_or<std::uint64_t>("seed", 0);
      if (section.has("anchor")) c.anchor = section.text("anchor");
    } else if (name == "protocol") {
      if (section.has("triplets")) c.spec.triplets = parse_triplets(section.text("triplets"));
      c.spec.packets_per_triplet = section.get_or("packets_per_triplet", c.spec.packets_per_triplet);
      c.spec.shots = section.get_or("shots", c.spec.shots);
      c.spec.packet_size = section.get_or("packet_size", c.spec.packet_size);
      c.spec.packet_duration_min =
          section.get_or("packet_duration_min", c.spec.packet_duration_min);
      c.spec.rotation = section.flag("rotation", false);
      c.spec.measure_all = section.flag("measure_all_qubits", false);
    } else if (name == "mitigation") {
      if (section.has("calibration")) {
        c.spec.calibration = parse_mitigation_mode(section.text("calibration"));
      }
      c.spec.calibration_shots = section.get_or("calibration_shots", c.spec.calibration_shots);
    } else if (name == "output") {
      if (section.has("dir")) c.output_dir = base_dir / section.text("dir");
    } else {
      throw ConfigError("unknown config section [" + name + "]");
    }
    section.finish();
  }
  if (!saw_job) throw ConfigError("config has no [job] section");
  if (c.backend == BackendKind::Emulated && c.scenario_path.empty()) {
    throw ConfigError("[job] emulated backend needs a scenario file");
  }
  c.spec.validate();
  return c;
}

JobConfig load_job_config(const std::filesystem::path& path) {
  try {
    return parse_job_config(read_text(path), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace wbench
