#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bellmono/io.hpp"
#include "bellmono/tolerances.hpp"
#include "test_helpers.hpp"

using namespace bellmono;
using namespace bellmono::testing;
namespace io = bellmono::io;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

struct CliRun {
  int exit_code = 0;
  std::string stdout_text;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "bellmono");
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  const int code = io::run_cli(args);
  std::cout.rdbuf(old);
  return CliRun{code, captured.str()};
}

std::string kv(const std::string& text, const std::string& key) {
  const std::string needle = key + "=";
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  const auto end = text.find('\n', pos);
  return text.substr(pos + needle.size(), end - pos - needle.size());
}

}  // namespace

TEST_CASE("statefile round trip is byte-identical") {
  Rng rng(51);
  const StateVector psi = random_state({3, 3}, rng);
  io::save_state_file("rt_pure.json", psi);
  const io::LoadedState loaded = io::load_state_file("rt_pure.json");
  REQUIRE(loaded.kind == "pure");
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i)
    CHECK(loaded.pure->amplitudes[i] == psi.amplitudes[i]);
  io::save_state_file("rt_pure2.json", *loaded.pure);
  CHECK(slurp("rt_pure.json") == slurp("rt_pure2.json"));

  const DensityMatrix rho = random_two_qubit_mixed(rng);
  io::save_state_file("rt_mixed.json", rho);
  const io::LoadedState loaded_mixed = io::load_state_file("rt_mixed.json");
  REQUIRE(loaded_mixed.kind == "mixed");
  CHECK(max_abs_diff(loaded_mixed.mixed->matrix, rho.matrix) == 0.0);
  io::save_state_file("rt_mixed2.json", *loaded_mixed.mixed);
  CHECK(slurp("rt_mixed.json") == slurp("rt_mixed2.json"));
}

TEST_CASE("malformed state files name the offending path") {
  CHECK_THROWS_AS(io::load_state_file("does_not_exist.json"), std::invalid_argument);

  std::ofstream("bad_kind.json") << R"({"kind":"foo","subsystem_dims":[2,2],"data":[]})";
  try {
    io::load_state_file("bad_kind.json");
    FAIL("expected a parse rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("bad_kind.json") != std::string::npos);
    CHECK(std::string(e.what()).find("kind") != std::string::npos);
  }

  // norm violation is caught by the StateVector invariants on load
  std::ofstream("bad_norm.json")
      << R"({"kind":"pure","subsystem_dims":[2],"data":[[1,0],[1,0]]})";
  CHECK_THROWS_AS(io::load_state_file("bad_norm.json"), std::invalid_argument);
}

TEST_CASE("csv emission: headers, digits, determinism") {
  ScanRecord rec;
  rec.index = 0;
  rec.seed = 9;
  rec.b_ab = 2.0 / 3.0;
  rec.b_bc = 1.0;
  rec.b_ac = 0.25;
  rec.violations = 0;
  io::emit_csv(std::vector<ScanRecord>{rec}, "one_record.csv");
  const std::string text = slurp("one_record.csv");
  CHECK(line_count(text) == 2);
  CHECK(text.find("index,seed,b_ab,b_bc,b_ac,violations\n") == 0);
  CHECK(text.find("0.666666666667") != std::string::npos);  // 12 significant digits

  std::vector<SweepPoint> sweep(41);
  for (std::size_t i = 0; i < sweep.size(); ++i) sweep[i].gamma = 0.05 * i;
  io::emit_csv(sweep, "sweep41.csv");
  CHECK(line_count(slurp("sweep41.csv")) == 42);

  io::emit_csv(sweep, "sweep41b.csv");
  CHECK(slurp("sweep41.csv") == slurp("sweep41b.csv"));

  CHECK_THROWS_AS(io::emit_csv(std::vector<ScanRecord>{}, "empty.csv"), std::invalid_argument);
}

TEST_CASE("manifest written next to the data file") {
  io::RunManifest manifest;
  manifest.command = "scan monogamy";
  manifest.parameters = {{"states", "3"}};
  manifest.master_seed = 5;
  manifest.wall_time_seconds = 0.25;
  manifest.record_count = 3;
  io::write_manifest("manifest_probe.csv", manifest);
  const auto j = nlohmann::json::parse(slurp("manifest_probe.csv.manifest.json"));
  CHECK(j["command"] == "scan monogamy");
  CHECK(j["master_seed"] == 5);
  CHECK(j["tool_version"] == io::kToolVersion);
  CHECK(j["record_count"] == 3);
  CHECK(j["parameters"]["states"] == "3");
}

TEST_CASE("cli: chsh eval prints the Tsirelson value for the Bell state") {
  io::save_state_file("cli_bell.json", bell_phi_plus());
  const CliRun res = run({"chsh", "eval", "cli_bell.json"});
  CHECK(res.exit_code == 0);
  CHECK(kv(res.stdout_text, "value") == "2.82842712475");
  CHECK(kv(res.stdout_text, "violates") == "true");
}

TEST_CASE("cli: chsh oracle agrees with the closed form") {
  io::save_state_file("cli_bell2.json", bell_phi_plus());
  const CliRun res = run({"chsh", "oracle", "cli_bell2.json", "--restarts", "8", "--seed", "3"});
  CHECK(res.exit_code == 0);
  const double value = std::stod(kv(res.stdout_text, "value"));
  const double closed = std::stod(kv(res.stdout_text, "closed_form"));
  CHECK(std::abs(value - closed) <= 1e-4);
}

TEST_CASE("cli: chen and qubit verdict") {
  io::save_state_file("cli_mixed.json", maximally_mixed(4, {2, 2}));
  const CliRun chen = run({"chen", "cli_mixed.json"});
  CHECK(chen.exit_code == 0);
  CHECK(kv(chen.stdout_text, "extendible") == "true");

  io::save_state_file("cli_werner09.json", werner(0.9));
  const CliRun verdict = run({"verdict", "qubit", "cli_werner09.json"});
  CHECK(verdict.exit_code == 0);
  CHECK(kv(verdict.stdout_text, "verdict") == "NoSymmetricExtension_BellViolation");
}

TEST_CASE("cli: cglmp max recovers the known maximum") {
  io::save_state_file("cli_gamma.json", qutrit_gamma_pair(0.7923));
  const CliRun res = run({"cglmp", "max", "cli_gamma.json", "--restarts", "24", "--seed", "5"});
  CHECK(res.exit_code == 0);
  const double value = std::stod(kv(res.stdout_text, "value"));
  CHECK(std::abs(value - 2.914854215512676) <= 2e-3);

  const CliRun verdict =
      run({"verdict", "qutrit", "cli_gamma.json", "--restarts", "12", "--seed", "5"});
  CHECK(verdict.exit_code == 0);
  CHECK(kv(verdict.stdout_text, "verdict") == "NoSymmetricExtension_ConjecturalBellViolation");
}

TEST_CASE("cli: dicke subcommands") {
  std::ofstream("cli_w.json") << R"({"j":1.5,"coefficients":[[0,0],[0,0],[1,0],[0,0]]})";
  const CliRun rdm = run({"dicke", "rdm", "--coeffs", "cli_w.json"});
  CHECK(rdm.exit_code == 0);
  CHECK(kv(rdm.stdout_text, "v_plus") == "0.333333333333");
  CHECK(std::stod(kv(rdm.stdout_text, "chsh")) <= 2.0 + 1e-9);

  const CliRun thm = run({"dicke", "theorem1", "--samples", "20", "--seed", "1", "--nmin", "3",
                          "--nmax", "4"});
  CHECK(thm.exit_code == 0);
  CHECK(kv(thm.stdout_text, "all_passed") == "true");
}

TEST_CASE("cli: monogamy scan emits csv, manifest, and is reproducible") {
  const CliRun first = run({"scan", "monogamy", "--states", "3", "--seed", "1", "--restarts",
                            "4", "--out", "cli_scan.csv"});
  CHECK(first.exit_code == 0);
  CHECK(kv(first.stdout_text, "double_violations") == "0");
  const std::string csv = slurp("cli_scan.csv");
  CHECK(line_count(csv) == 4);
  CHECK(nlohmann::json::parse(slurp("cli_scan.csv.manifest.json"))["record_count"] == 3);

  const CliRun second = run({"scan", "monogamy", "--states", "3", "--seed", "1", "--restarts",
                             "4", "--out", "cli_scan2.csv"});
  CHECK(second.exit_code == 0);
  CHECK(slurp("cli_scan2.csv") == csv);
}

TEST_CASE("cli: gamma sweep emits csv and manifest") {
  const CliRun res = run({"scan", "gamma", "--family", "psi1", "--from", "0", "--to", "1",
                          "--points", "3", "--restarts", "4", "--seed", "1", "--out",
                          "cli_gamma_sweep.csv"});
  CHECK(res.exit_code == 0);
  const std::string csv = slurp("cli_gamma_sweep.csv");
  CHECK(line_count(csv) == 4);
  CHECK(csv.find("gamma,b_ab,b_bc,b_ac\n") == 0);
  CHECK(std::stoi(kv(res.stdout_text, "max_violations")) <= 1);
}

TEST_CASE("cli: input errors exit with code 1") {
  CHECK(run({"chsh", "eval", "missing_file.json"}).exit_code == 1);
  CHECK(run({"chsh", "eval"}).exit_code == 1);          // missing positional
  CHECK(run({"scan", "monogamy", "--bogus"}).exit_code == 1);

  std::ofstream("cli_garbage.json") << "{not json";
  CHECK(run({"chsh", "eval", "cli_garbage.json"}).exit_code == 1);

  // well-formed statefile of the wrong dimension for the operation
  io::save_state_file("cli_qutrit_pair.json", qutrit_gamma_pair(1.0));
  CHECK(run({"chsh", "eval", "cli_qutrit_pair.json"}).exit_code == 1);
}
