#include "lorawan/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lorawan/errors.hpp"

namespace lorawan {

void Scenario::validate() const {
  if (name.empty()) throw ParameterError("scenario name must not be empty");
  mac.validate();
  radio.validate();
  profile.validate();
  sim.validate();
}

Scenario default_scenario() {
  Scenario s;
  s.name = "default";
  s.mac.device_count = 50;
  s.mac.max_transmissions = 2;
  s.mac.duty_cycle = 0.01;
  s.mac.channel_count = 3;
  s.mac.channel_quality = 0.9;
  s.mac.slot_choice = {1.0, 1.0};
  s.mac.ack_policy = AckPolicy::Case2;
  s.sim.mac = s.mac;
  s.sim.radio = s.radio;
  s.sim.profile = s.profile;
  return s;
}

namespace {

struct Cursor {
  const std::string& origin;
  int line = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParameterError(origin + ":" + std::to_string(line) + ": " + message);
  }
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const Cursor& cur, const std::string& key,
                    const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    cur.fail("value for '" + key + "' is not a number: '" + value + "'");
  return v;
}

int parse_int(const Cursor& cur, const std::string& key,
              const std::string& value) {
  const double v = parse_number(cur, key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    cur.fail("value for '" + key + "' must be an integer: '" + value + "'");
  return i;
}

bool parse_bool(const Cursor& cur, const std::string& key,
                const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  cur.fail("value for '" + key + "' must be true or false: '" + value + "'");
}

std::vector<double> parse_list(const Cursor& cur, const std::string& key,
                               const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) cur.fail("empty entry in list for '" + key + "'");
    out.push_back(parse_number(cur, key, item));
  }
  if (out.empty()) cur.fail("empty list for '" + key + "'");
  return out;
}

void apply_mac(const Cursor& cur, MacParams& mac, const std::string& key,
               const std::string& value) {
  if (key == "device_count") mac.device_count = parse_int(cur, key, value);
  else if (key == "max_transmissions") mac.max_transmissions = parse_int(cur, key, value);
  else if (key == "duty_cycle") mac.duty_cycle = parse_number(cur, key, value);
  else if (key == "channel_count") mac.channel_count = parse_int(cur, key, value);
  else if (key == "channel_quality") mac.channel_quality = parse_number(cur, key, value);
  else if (key == "slot_choice") mac.slot_choice = parse_list(cur, key, value);
  else if (key == "ack_policy") {
    if (value == "case1") mac.ack_policy = AckPolicy::Case1;
    else if (value == "case2") mac.ack_policy = AckPolicy::Case2;
    else cur.fail("ack_policy must be case1 or case2, got '" + value + "'");
  } else if (key == "traffic_intensity") mac.traffic_intensity = parse_number(cur, key, value);
  else if (key == "ack_timeout_mean") mac.ack_timeout_mean = parse_number(cur, key, value);
  else cur.fail("unknown key '" + key + "' in [mac]");
}

void apply_radio(const Cursor& cur, RadioConfig& radio, const std::string& key,
                 const std::string& value) {
  if (key == "spreading_factor") radio.spreading_factor = parse_int(cur, key, value);
  else if (key == "bandwidth_hz") radio.bandwidth_hz = parse_number(cur, key, value);
  else if (key == "coding_rate_denominator") radio.coding_rate_denominator = parse_int(cur, key, value);
  else if (key == "preamble_symbols") radio.preamble_symbols = parse_number(cur, key, value);
  else if (key == "data_payload_bytes") radio.data_payload_bytes = parse_int(cur, key, value);
  else if (key == "ack_payload_bytes") radio.ack_payload_bytes = parse_int(cur, key, value);
  else if (key == "implicit_header") radio.implicit_header = parse_bool(cur, key, value);
  else if (key == "low_dr_optimize") radio.low_dr_optimize = parse_bool(cur, key, value);
  else if (key == "rs1_dr_offset") radio.rs1_dr_offset = parse_int(cur, key, value);
  else if (key == "uplink_crc") radio.uplink_crc = parse_bool(cur, key, value);
  else if (key == "ack_crc") radio.ack_crc = parse_bool(cur, key, value);
  else cur.fail("unknown key '" + key + "' in [radio]");
}

void apply_profile(const Cursor& cur, EnergyProfile& profile,
                   const std::string& key, const std::string& value) {
  if (key == "voltage") profile.voltage = parse_number(cur, key, value);
  else if (key == "current_tx") profile.current_tx = parse_number(cur, key, value);
  else if (key == "current_rx") profile.current_rx = parse_number(cur, key, value);
  else if (key == "current_idle") profile.current_idle = parse_number(cur, key, value);
  else if (key == "current_sleep") profile.current_sleep = parse_number(cur, key, value);
  else cur.fail("unknown key '" + key + "' in [profile]");
}

void apply_sim(const Cursor& cur, SimConfig& sim, const std::string& key,
               const std::string& value) {
  if (key == "duration") sim.sim_duration = parse_number(cur, key, value);
  else if (key == "runs") sim.runs = parse_int(cur, key, value);
  else if (key == "base_seed") sim.base_seed = static_cast<std::uint64_t>(parse_number(cur, key, value));
  else if (key == "gateway_policy") {
    if (value == "prefer_rs1") sim.gateway_policy = GatewayPolicy::PreferRS1ElseRS2;
    else if (value == "force_rs1") sim.gateway_policy = GatewayPolicy::ForceRS1;
    else if (value == "force_rs2") sim.gateway_policy = GatewayPolicy::ForceRS2;
    else cur.fail("gateway_policy must be prefer_rs1, force_rs1 or force_rs2");
  } else if (key == "dr_stepping") sim.dr_stepping = parse_bool(cur, key, value);
  else if (key == "reserved_channel_rdc_free") sim.reserved_channel_rdc_free = parse_bool(cur, key, value);
  else if (key == "tx_jitter_s") sim.tx_jitter_s = parse_number(cur, key, value);
  else cur.fail("unknown key '" + key + "' in [sim]");
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  Scenario scenario = default_scenario();
  scenario.mac.slot_choice.clear();  // re-sized below once N is known
  Cursor cur{origin, 0};
  std::string section;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++cur.line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') cur.fail("unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section != "mac" && section != "radio" && section != "profile" &&
          section != "sim")
        cur.fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) cur.fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) cur.fail("empty key");
    if (value.empty()) cur.fail("empty value for '" + key + "'");
    if (section.empty()) {
      if (key == "name") scenario.name = value;
      else cur.fail("key '" + key + "' outside any section (only 'name' allowed)");
    } else if (section == "mac") {
      apply_mac(cur, scenario.mac, key, value);
    } else if (section == "radio") {
      apply_radio(cur, scenario.radio, key, value);
    } else if (section == "profile") {
      apply_profile(cur, scenario.profile, key, value);
    } else {
      apply_sim(cur, scenario.sim, key, value);
    }
  }
  // slot_choice defaults to all-RS1 sized to max_transmissions.
  if (scenario.mac.slot_choice.empty() ||
      scenario.mac.slot_choice.size() == 1) {
    const double g = scenario.mac.slot_choice.empty()
                         ? 1.0
                         : scenario.mac.slot_choice.front();
    scenario.mac.slot_choice.assign(
        static_cast<std::size_t>(scenario.mac.max_transmissions), g);
  }
  scenario.sim.mac = scenario.mac;
  scenario.sim.radio = scenario.radio;
  scenario.sim.profile = scenario.profile;
  scenario.validate();
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path);
}

}  // namespace lorawan
