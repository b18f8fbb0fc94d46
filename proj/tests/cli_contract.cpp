// Exercises the lwct binary end to end: scenario files, every subcommand,
// output schemas and exit codes.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int checks = 0;
int failures = 0;

void expect(bool ok, const std::string& what) {
  ++checks;
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << '\n';
  }
}

int run_cli(const std::string& args, std::string* output) {
  const std::string out_file = "cli_contract_out.tmp";
  const std::string cmd =
      std::string(CLI_BINARY) + " " + args + " > " + out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  *output = buf.str();
  std::remove(out_file.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

}  // namespace

int main() {
  std::string out;

  // evaluate: default scenario, explicit cases.
  expect(run_cli("evaluate", &out) == 0, "evaluate runs on defaults");
  expect(out.find("\"case2\"") != std::string::npos, "default case is 2");
  expect(run_cli("evaluate --case both", &out) == 0, "evaluate both cases");
  expect(out.find("\"case1\"") != std::string::npos &&
             out.find("\"case2\"") != std::string::npos,
         "both cases reported");
  expect(run_cli("evaluate --gamma rs2", &out) == 0, "evaluate at rs2");

  // evaluate with a scenario file.
  write_file("cli_scenario.tmp",
             "name = contract\n[mac]\ndevice_count = 10\nmax_transmissions = "
             "3\nchannel_count = 4\nchannel_quality = 0.8\n");
  expect(run_cli("evaluate --scenario cli_scenario.tmp", &out) == 0,
         "evaluate scenario file");
  expect(out.find("\"scenario\": \"contract\"") != std::string::npos,
         "scenario name echoed");

  // gamma mixed:<path>.
  write_file("cli_probs.tmp", "0.5, 0.25, 0.1\n");
  expect(run_cli("evaluate --scenario cli_scenario.tmp --gamma "
                 "mixed:cli_probs.tmp",
                 &out) == 0,
         "mixed gamma evaluate");
  expect(out.find("0.25") != std::string::npos, "slot probabilities echoed");
  write_file("cli_probs_bad.tmp", "0.5\n");
  expect(run_cli("evaluate --scenario cli_scenario.tmp --gamma "
                 "mixed:cli_probs_bad.tmp",
                 &out) == 2,
         "wrong-length probability file exits 2");

  // sweep: empty list -> header only; numbers printed with >= 9 significant
  // digits.
  expect(run_cli("sweep --param A --values \"\"", &out) == 0, "empty sweep");
  expect(lines_of(out).size() == 1, "empty sweep emits only the header");
  expect(run_cli("sweep --param N --values 1,2,3", &out) == 0, "sweep N");
  expect(lines_of(out).size() == 1 + 3 * 4, "sweep N row count");
  expect(run_cli("sweep --param A --values 10.5", &out) == 2,
         "fractional device count exits 2");
  expect(run_cli("sweep --param bogus --values 1", &out) == 2,
         "unknown parameter exits 2");
  {
    expect(run_cli("sweep --param delta --values 0.5", &out) == 0,
           "sweep delta");
    const auto rows = lines_of(out);
    bool long_numbers = rows.size() == 5;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto comma = rows[i].find(",delay_s");
      (void)comma;
      // delay column is field 5; count digits in it.
      std::istringstream fields(rows[i]);
      std::string field;
      int idx = 0;
      while (std::getline(fields, field, ',')) {
        if (idx == 4) {
          int digits = 0;
          for (char c : field)
            if (c >= '0' && c <= '9') ++digits;
          if (digits < 9) long_numbers = false;
        }
        ++idx;
      }
    }
    expect(long_numbers, "sweep numbers carry >= 9 significant digits");
  }

  // sim: aggregate JSON + per-frame CSV, deterministic under a pinned seed.
  write_file("cli_sim_scenario.tmp",
             "[mac]\ndevice_count = 6\nmax_transmissions = 2\nchannel_count = "
             "3\nchannel_quality = 1.0\n[sim]\nduration = 1800\nruns = "
             "2\nbase_seed = 11\ngateway_policy = force_rs1\n");
  expect(run_cli("sim --scenario cli_sim_scenario.tmp --out cli_frames.tmp",
                 &out) == 0,
         "sim runs");
  expect(out.find("\"mean_ack_delay_s\"") != std::string::npos,
         "sim prints aggregate JSON");
  std::string first_csv;
  {
    std::ifstream in("cli_frames.tmp");
    std::ostringstream buf;
    buf << in.rdbuf();
    first_csv = buf.str();
  }
  expect(first_csv.rfind("run,device,frame_counter,attempts,delay_s,energy_j,"
                         "dropped,slots_used",
                         0) == 0,
         "frame CSV header");
  expect(run_cli("sim --scenario cli_sim_scenario.tmp --out cli_frames.tmp",
                 &out) == 0,
         "sim reruns");
  {
    std::ifstream in("cli_frames.tmp");
    std::ostringstream buf;
    buf << in.rdbuf();
    expect(buf.str() == first_csv, "pinned seed gives byte-identical CSV");
  }
  std::remove("cli_frames.tmp");

  // validate: schema check on a small scenario.
  expect(run_cli("validate --scenario cli_sim_scenario.tmp --devices 4,8 "
                 "--runs 2 --duration 1200",
                 &out) == 0,
         "validate runs");
  {
    const auto rows = lines_of(out);
    expect(rows.size() == 3, "validate emits one row per device count");
    expect(rows[0].rfind("devices,sim_mean_delay_s,", 0) == 0,
           "validate header");
  }

  // export-matrix: labels + numeric rows that sum to one.
  expect(run_cli("export-matrix --scenario cli_scenario.tmp --case 1", &out) ==
             0,
         "export-matrix runs");
  {
    const auto rows = lines_of(out);
    expect(rows.size() == 1 + 25, "matrix rows for N=3 (8N+1)");
    expect(rows[0].rfind("s_1,r1_1,p1_1,c1_1,r2_1,p2_1,c2_1,w_1,", 0) == 0,
           "state labels header");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      std::istringstream fields(rows[i]);
      std::string field;
      double sum = 0.0;
      while (std::getline(fields, field, ',')) sum += std::strtod(field.c_str(), nullptr);
      expect(std::abs(sum - 1.0) < 1e-9, "matrix row sums to 1");
    }
  }

  std::remove("cli_scenario.tmp");
  std::remove("cli_probs.tmp");
  std::remove("cli_probs_bad.tmp");
  std::remove("cli_sim_scenario.tmp");

  std::printf("cli_contract: %d checks, %d failures\n", checks, failures);
  return failures == 0 ? 0 : 1;
}
