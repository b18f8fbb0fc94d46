// lwct: LoRaWAN confirmed-traffic toolkit. Evaluates the Markov-chain model
// of Class A confirmed uplink, sweeps its parameters, and validates it
// against the built-in discrete-event simulator.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lorawan/errors.hpp"
#include "lorawan/metrics.hpp"
#include "lorawan/netsim.hpp"
#include "lorawan/scenario.hpp"

namespace {

using namespace lorawan;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Scenario load_or_default(const std::string& path) {
  return path.empty() ? default_scenario() : load_scenario(path);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open output file: " + path);
  out << content;
}

std::vector<double> parse_value_list(const std::string& csv) {
  std::vector<double> values;
  if (csv.empty()) return values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ParameterError("empty entry in value list");
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0')
      throw ParameterError("not a number in value list: '" + item + "'");
    values.push_back(v);
  }
  return values;
}

MacParams with_gamma(const MacParams& mac, double gamma) {
  MacParams out = mac;
  out.slot_choice.assign(static_cast<std::size_t>(out.max_transmissions), gamma);
  return out;
}

MacParams with_case(const MacParams& mac, int ack_case) {
  MacParams out = mac;
  out.ack_policy = ack_case == 1 ? AckPolicy::Case1 : AckPolicy::Case2;
  return out;
}

// --gamma rs1|rs2|mixed:<path>; mixed files hold one RS1 probability per
// attempt (whitespace, newline or comma separated).
struct GammaChoice {
  bool mixed = false;
  double pure = 1.0;
  std::vector<double> slot_probs;
};

GammaChoice parse_gamma(const std::string& spec, int n_max) {
  GammaChoice g;
  if (spec.empty() || spec == "rs1") {
    g.pure = 1.0;
  } else if (spec == "rs2") {
    g.pure = 0.0;
  } else if (spec.rfind("mixed:", 0) == 0) {
    const std::string path = spec.substr(6);
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open slot-probability file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    for (char& c : text)
      if (c == ',' || c == ';' || c == '\n' || c == '\r' || c == '\t') c = ' ';
    std::istringstream tokens(text);
    std::string token;
    while (tokens >> token) {
      char* end = nullptr;
      const double v = std::strtod(token.c_str(), &end);
      if (end == token.c_str() || *end != '\0')
        throw ParameterError("not a number in " + path + ": '" + token + "'");
      g.slot_probs.push_back(v);
    }
    if (static_cast<int>(g.slot_probs.size()) != n_max)
      throw ParameterError("slot-probability file must hold exactly " +
                           std::to_string(n_max) + " values");
    g.mixed = true;
  } else {
    throw ParameterError("--gamma must be rs1, rs2 or mixed:<path>");
  }
  return g;
}

std::string metrics_json(const ResourceMetrics& m, bool unbounded) {
  std::ostringstream out;
  out << "{\n";
  if (unbounded) {
    out << "    \"expected_delay_per_ack_s\": \"unbounded\",\n";
    out << "    \"expected_energy_per_ack_j\": \"unbounded\",\n";
  } else {
    out << "    \"expected_delay_per_ack_s\": " << fmt(m.expected_delay_per_ack)
        << ",\n";
    out << "    \"expected_energy_per_ack_j\": "
        << fmt(m.expected_energy_per_ack) << ",\n";
  }
  out << "    \"success_probability\": " << fmt(m.success_probability) << ",\n";
  out << "    \"expected_attempts\": " << fmt(m.expected_attempts) << ",\n";
  out << "    \"per_attempt_slot_probabilities\": [";
  for (std::size_t i = 0; i < m.per_attempt_slot_probabilities.size(); ++i)
    out << (i ? "," : "") << fmt(m.per_attempt_slot_probabilities[i]);
  out << "]\n  }";
  return out.str();
}

ResourceMetrics evaluate_with_gamma(const Scenario& scenario,
                                    const GammaChoice& gamma, int ack_case,
                                    bool* unbounded) {
  const MacParams mac = with_case(scenario.mac, ack_case);
  *unbounded = false;
  try {
    if (gamma.mixed)
      return mixed_slot_estimate(mac, scenario.radio, scenario.profile,
                                 gamma.slot_probs);
    return evaluate_model(with_gamma(mac, gamma.pure), scenario.radio,
                          scenario.profile);
  } catch (const NoSuccessError&) {
    *unbounded = true;
    ResourceMetrics m;
    const ChainModel model = build_chain_model(
        gamma.mixed ? mac : with_gamma(mac, gamma.pure), scenario.radio,
        scenario.profile);
    const AbsorbingStats abs = absorbing_stats(model);
    m.success_probability = abs.success_probability;
    m.expected_attempts = abs.expected_attempts;
    m.per_attempt_slot_probabilities =
        gamma.mixed ? gamma.slot_probs
                    : std::vector<double>(
                          static_cast<std::size_t>(mac.max_transmissions),
                          gamma.pure);
    return m;
  }
}

int cmd_evaluate(const std::string& scenario_path, const std::string& case_spec,
                 const std::string& gamma_spec, const std::string& out_path) {
  const Scenario scenario = load_or_default(scenario_path);
  const GammaChoice gamma =
      parse_gamma(gamma_spec, scenario.mac.max_transmissions);
  std::vector<int> cases;
  if (case_spec == "both") {
    cases = {1, 2};
  } else if (case_spec == "1" || case_spec == "2") {
    cases = {case_spec == "1" ? 1 : 2};
  } else if (case_spec.empty()) {
    cases = {scenario.mac.ack_policy == AckPolicy::Case1 ? 1 : 2};
  } else {
    throw ParameterError("--case must be 1, 2 or both");
  }

  std::ostringstream out;
  out << "{\n  \"scenario\": \"" << scenario.name << "\",\n";
  out << "  \"device_count\": " << scenario.mac.device_count << ",\n";
  out << "  \"max_transmissions\": " << scenario.mac.max_transmissions << ",\n";
  for (std::size_t i = 0; i < cases.size(); ++i) {
    bool unbounded = false;
    const ResourceMetrics m =
        evaluate_with_gamma(scenario, gamma, cases[i], &unbounded);
    out << "  \"case" << cases[i] << "\": " << metrics_json(m, unbounded);
    out << (i + 1 < cases.size() ? ",\n" : "\n");
  }
  out << "}\n";
  write_output(out_path, out.str());
  return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& param,
              const std::string& values_csv, const std::string& out_path) {
  const Scenario scenario = load_or_default(scenario_path);
  const std::vector<double> values = parse_value_list(values_csv);
  std::ostringstream out;
  out << "parameter,value,gamma,ack_case,delay_s,energy_j,success_probability,"
         "expected_attempts\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double value = values[i];
    MacParams mac = scenario.mac;
    if (param == "A") {
      mac.device_count = static_cast<int>(value);
      if (static_cast<double>(mac.device_count) != value)
        throw ParameterError("device counts must be integers, got " +
                             fmt(value));
    } else if (param == "N") {
      const int n = static_cast<int>(value);
      if (static_cast<double>(n) != value)
        throw ParameterError("N values must be integers, got " + fmt(value));
      mac.max_transmissions = n;
      mac.slot_choice.assign(static_cast<std::size_t>(n),
                             mac.slot_choice.empty() ? 1.0 : mac.slot_choice[0]);
    } else if (param == "delta") {
      mac.duty_cycle = value;
    } else if (param == "alpha") {
      mac.channel_quality = value;
    } else if (param == "m_c") {
      mac.channel_count = static_cast<int>(value);
      if (static_cast<double>(mac.channel_count) != value)
        throw ParameterError("channel counts must be integers, got " +
                             fmt(value));
    } else {
      throw ParameterError("--param must be one of A, N, delta, alpha, m_c");
    }
    for (double gamma : {1.0, 0.0}) {
      for (int ack_case : {1, 2}) {
        MacParams point = with_case(with_gamma(mac, gamma), ack_case);
        try {
          point.validate();
        } catch (const ParameterError& e) {
          throw ParameterError("sweep value " + fmt(value) + " for " + param +
                               " is invalid: " + e.what());
        }
        const ResourceMetrics m =
            evaluate_model(point, scenario.radio, scenario.profile);
        out << param << ',' << fmt(value) << ',' << fmt(gamma) << ','
            << ack_case << ',' << fmt(m.expected_delay_per_ack) << ','
            << fmt(m.expected_energy_per_ack) << ','
            << fmt(m.success_probability) << ',' << fmt(m.expected_attempts)
            << '\n';
      }
    }
  }
  write_output(out_path, out.str());
  return 0;
}

int cmd_validate(const std::string& scenario_path,
                 const std::string& devices_csv, std::optional<int> runs,
                 std::optional<double> duration,
                 std::optional<std::uint64_t> seed,
                 const std::string& out_path) {
  const Scenario scenario = load_or_default(scenario_path);
  const std::vector<double> device_counts = parse_value_list(devices_csv);
  if (device_counts.empty())
    throw ParameterError("--devices needs at least one device count");

  std::ostringstream out;
  out << "devices,sim_mean_delay_s,sim_ci95_delay_s,sim_energy_per_ack_j,"
         "sim_ci95_energy_j,sim_drop_rate,model_rs1_delay_s,model_rs1_energy_j,"
         "model_rs2_delay_s,model_rs2_energy_j,mixed_delay_s,mixed_energy_j,"
         "mixed_delay_rel_err,mixed_energy_rel_err,slot_probs\n";
  for (double devices_value : device_counts) {
    const int devices = static_cast<int>(devices_value);
    if (static_cast<double>(devices) != devices_value || devices < 1)
      throw ParameterError("device counts must be positive integers, got " +
                           fmt(devices_value));
    SimConfig cfg = scenario.sim;
    cfg.mac = scenario.mac;
    cfg.mac.device_count = devices;
    cfg.radio = scenario.radio;
    cfg.profile = scenario.profile;
    if (runs) cfg.runs = *runs;
    if (duration) cfg.sim_duration = *duration;
    if (seed) cfg.base_seed = *seed;
    const SimStats stats = run_simulation(cfg);
    const SlotProbabilities slots = estimate_slot_probabilities(stats);
    for (std::size_t n = 0; n < slots.measured.size(); ++n) {
      if (!slots.measured[n])
        std::cerr << "warning: A=" << devices << ": no ACKs observed at attempt "
                  << n + 1 << "; using configured gamma "
                  << slots.value[n] << '\n';
    }

    const ResourceMetrics rs1 = evaluate_model(
        with_gamma(cfg.mac, 1.0), scenario.radio, scenario.profile);
    const ResourceMetrics rs2 = evaluate_model(
        with_gamma(cfg.mac, 0.0), scenario.radio, scenario.profile);
    const ResourceMetrics mixed = mixed_slot_estimate(
        cfg.mac, scenario.radio, scenario.profile, slots.value);
    const double delay_err =
        std::abs(stats.mean_ack_delay - mixed.expected_delay_per_ack) /
        stats.mean_ack_delay;
    const double energy_err =
        std::abs(stats.mean_energy_per_ack - mixed.expected_energy_per_ack) /
        stats.mean_energy_per_ack;
    out << devices << ',' << fmt(stats.mean_ack_delay) << ','
        << fmt(stats.ci95_ack_delay) << ',' << fmt(stats.mean_energy_per_ack)
        << ',' << fmt(stats.ci95_energy_per_ack) << ',' << fmt(stats.drop_rate)
        << ',' << fmt(rs1.expected_delay_per_ack) << ','
        << fmt(rs1.expected_energy_per_ack) << ','
        << fmt(rs2.expected_delay_per_ack) << ','
        << fmt(rs2.expected_energy_per_ack) << ','
        << fmt(mixed.expected_delay_per_ack) << ','
        << fmt(mixed.expected_energy_per_ack) << ',' << fmt(delay_err) << ','
        << fmt(energy_err) << ',';
    for (std::size_t n = 0; n < slots.value.size(); ++n)
      out << (n ? ";" : "") << fmt(slots.value[n]);
    out << '\n';
  }
  write_output(out_path, out.str());
  return 0;
}

int cmd_sim(const std::string& scenario_path, std::optional<int> runs,
            std::optional<double> duration, std::optional<std::uint64_t> seed,
            const std::string& out_path) {
  const Scenario scenario = load_or_default(scenario_path);
  SimConfig cfg = scenario.sim;
  cfg.mac = scenario.mac;
  cfg.radio = scenario.radio;
  cfg.profile = scenario.profile;
  if (runs) cfg.runs = *runs;
  if (duration) cfg.sim_duration = *duration;
  if (seed) cfg.base_seed = *seed;
  const SimStats stats = run_simulation(cfg);
  if (!out_path.empty()) {
    std::ofstream csv(out_path);
    if (!csv) throw ParameterError("cannot open output file: " + out_path);
    write_frames_csv(stats, csv);
  }
  std::cout << aggregate_json(stats);
  return 0;
}

int cmd_export_matrix(const std::string& scenario_path,
                      const std::string& case_spec,
                      const std::string& gamma_spec,
                      const std::string& out_path) {
  const Scenario scenario = load_or_default(scenario_path);
  MacParams mac = scenario.mac;
  if (case_spec == "1") mac.ack_policy = AckPolicy::Case1;
  else if (case_spec == "2") mac.ack_policy = AckPolicy::Case2;
  else if (!case_spec.empty()) throw ParameterError("--case must be 1 or 2");
  const GammaChoice gamma = parse_gamma(gamma_spec, mac.max_transmissions);
  if (gamma.mixed)
    mac.slot_choice = gamma.slot_probs;
  else
    mac = with_gamma(mac, gamma.pure);
  const ChainModel model =
      build_chain_model(mac, scenario.radio, scenario.profile);
  std::ostringstream out;
  const auto labels = state_labels(mac.max_transmissions);
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << (i ? "," : "") << labels[i];
  out << '\n';
  for (int i = 0; i < model.dimension(); ++i) {
    for (int j = 0; j < model.dimension(); ++j)
      out << (j ? "," : "") << fmt(model.matrix(i, j));
    out << '\n';
  }
  write_output(out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LoRaWAN Class A confirmed-uplink delay/energy toolkit"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string case_spec;
  std::string gamma_spec;
  std::string out_path;
  std::string param;
  std::string values_csv;
  std::string devices_csv;
  std::optional<int> runs;
  std::optional<double> duration;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "scenario file path");
    cmd->add_option("--out", out_path, "output file (default stdout)");
  };

  CLI::App* evaluate = app.add_subcommand("evaluate", "expected resources per ACK");
  add_common(evaluate);
  evaluate->add_option("--case", case_spec, "ACK policy: 1, 2 or both");
  evaluate->add_option("--gamma", gamma_spec, "rs1, rs2 or mixed:<path>");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter to CSV");
  add_common(sweep);
  sweep->add_option("--param", param, "A, N, delta, alpha or m_c")->required();
  sweep->add_option("--values", values_csv, "comma-separated values")->required();

  CLI::App* validate = app.add_subcommand("validate", "simulator-vs-model CSV");
  add_common(validate);
  validate->add_option("--devices", devices_csv, "device counts")->required();
  validate->add_option("--runs", runs, "simulation runs per point");
  validate->add_option("--duration", duration, "simulated seconds per run");
  validate->add_option("--seed", seed, "base seed");

  CLI::App* sim = app.add_subcommand("sim", "run the discrete-event simulator");
  sim->add_option("--scenario", scenario_path, "scenario file path");
  sim->add_option("--out", out_path, "per-frame CSV output path");
  sim->add_option("--runs", runs, "simulation runs");
  sim->add_option("--duration", duration, "simulated seconds per run");
  sim->add_option("--seed", seed, "base seed");

  CLI::App* export_matrix =
      app.add_subcommand("export-matrix", "transition matrix as CSV");
  add_common(export_matrix);
  export_matrix->add_option("--case", case_spec, "ACK policy: 1 or 2");
  export_matrix->add_option("--gamma", gamma_spec, "rs1, rs2 or mixed:<path>");

  CLI11_PARSE(app, argc, argv);

  try {
    if (evaluate->parsed())
      return cmd_evaluate(scenario_path, case_spec, gamma_spec, out_path);
    if (sweep->parsed())
      return cmd_sweep(scenario_path, param, values_csv, out_path);
    if (validate->parsed())
      return cmd_validate(scenario_path, devices_csv, runs, duration, seed,
                          out_path);
    if (sim->parsed())
      return cmd_sim(scenario_path, runs, duration, seed, out_path);
    if (export_matrix->parsed())
      return cmd_export_matrix(scenario_path, case_spec, gamma_spec, out_path);
  } catch (const lorawan::ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const lorawan::NoSuccessError& e) {
    std::cerr << "no-success scenario: " << e.what() << '\n';
    return 4;
  } catch (const lorawan::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
