#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellmono/chsh.hpp"
#include "bellmono/cglmp.hpp"
#include "bellmono/dicke.hpp"
#include "bellmono/io.hpp"
#include "bellmono/rng.hpp"
#include "bellmono/scan.hpp"
#include "bellmono/tolerances.hpp"

namespace bellmono::io {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << "=" << value << "\n";
}

void print_kv(const std::string& key, const char* value) { print_kv(key, std::string(value)); }

void print_kv(const std::string& key, double value) { print_kv(key, format_sig(value, 12)); }

void print_kv(const std::string& key, bool value) { print_kv(key, value ? "true" : "false"); }

std::string angle_csv(const std::array<double, 3>& row) {
  return format_sig(row[0], 12) + "," + format_sig(row[1], 12) + "," + format_sig(row[2], 12);
}

void cmd_chsh_eval(const std::string& statefile) {
  const ChshReport report = chsh_value(load_state_file(statefile).as_density());
  print_kv("value", report.value);
  print_kv("violates", report.violates);
  print_kv("eigenvalues_U", format_sig(report.eigenvalues_u[0], 12) + "," +
                                format_sig(report.eigenvalues_u[1], 12) + "," +
                                format_sig(report.eigenvalues_u[2], 12));
}

void cmd_chsh_oracle(const std::string& statefile, int restarts, std::uint64_t seed) {
  const DensityMatrix rho = load_state_file(statefile).as_density();
  print_kv("value", chsh_direct(rho, restarts, seed));
  print_kv("closed_form", chsh_value(rho).value);
}

void cmd_chen(const std::string& statefile) {
  const ChenReport report = chen_criterion(load_state_file(statefile).as_density());
  print_kv("lhs", report.lhs);
  print_kv("rhs", report.rhs);
  print_kv("extendible", report.extendible);
}

void cmd_verdict_qubit(const std::string& statefile) {
  const DensityMatrix rho = load_state_file(statefile).as_density();
  print_kv("chsh", chsh_value(rho).value);
  print_kv("verdict", to_string(nonextendibility_verdict_qubit(rho)));
}

void cmd_verdict_qutrit(const std::string& statefile, int restarts, std::uint64_t seed) {
  const DensityMatrix rho = load_state_file(statefile).as_density();
  print_kv("cglmp", cglmp_max(rho, restarts, seed).value);
  print_kv("verdict", to_string(nonextendibility_verdict_qutrit(rho, restarts, seed)));
}

void cmd_dicke_rdm(const std::string& coeffs_path) {
  const DickeState psi = load_dicke_coeffs(coeffs_path);
  const SymmetricRdm el = rdm_from_dicke(psi);
  print_kv("v_plus", el.v_plus);
  print_kv("v_minus", el.v_minus);
  print_kv("w", el.w);
  print_kv("y", el.y);
  print_kv("x_plus", format_sig(el.x_plus.real(), 12) + "," + format_sig(el.x_plus.imag(), 12));
  print_kv("x_minus", format_sig(el.x_minus.real(), 12) + "," + format_sig(el.x_minus.imag(), 12));
  print_kv("u", format_sig(el.u.real(), 12) + "," + format_sig(el.u.imag(), 12));
  print_kv("chsh", chsh_value(assemble_rdm(el)).value);
}

void cmd_dicke_theorem1(int samples, std::uint64_t seed, int nmin, int nmax) {
  if (samples < 1) throw std::invalid_argument("dicke theorem1: --samples must be >= 1");
  if (nmin < 3 || nmax < nmin) throw std::invalid_argument("dicke theorem1: need 3 <= nmin <= nmax");
  bool all_passed = true;
  for (int n = nmin; n <= nmax; ++n) {
    double max_chsh = 0.0;
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
    for (int s = 0; s < samples; ++s) {
      const auto res = theorem1_check(random_dicke(0.5 * n, rng));
      max_chsh = std::max(max_chsh, res.chsh);
      all_passed = all_passed && res.passed;
    }
    std::cout << "n=" << n << " samples=" << samples << " max_chsh=" << format_sig(max_chsh, 12)
              << "\n";
  }
  print_kv("all_passed", all_passed);
  if (!all_passed) throw std::runtime_error("theorem1 bound exceeded; this signals a defect");
}

void cmd_cglmp_max(const std::string& statefile, int restarts, std::uint64_t seed, double tol) {
  const DensityMatrix rho = load_state_file(statefile).as_density();
  const CglmpReport report = cglmp_max(rho, restarts, seed, tol);
  print_kv("value", report.value);
  print_kv("violates", report.value > 2.0 + tol::cglmp_violation_eps);
  std::cout << "restarts=" << report.restarts_used << "\n";
  std::cout << "evaluations=" << report.evaluations << "\n";
  print_kv("phi1", angle_csv(report.best_angles.phi[0]));
  print_kv("phi2", angle_csv(report.best_angles.phi[1]));
  print_kv("varphi1", angle_csv(report.best_angles.varphi[0]));
  print_kv("varphi2", angle_csv(report.best_angles.varphi[1]));
}

// returns true if a monogamy counterexample was found
bool cmd_scan_monogamy(std::size_t states, std::uint64_t seed, int restarts,
                       const std::string& out) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ofstream csv(out, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot open file for writing: " + out);
  csv << scan_csv_header() << "\n";

  const ScanResult result = monogamy_scan(states, seed, restarts, [&](const ScanRecord& rec) {
    csv << csv_row(rec) << "\n";
    csv.flush();  // partial results survive an interrupted run
  });
  csv.close();

  RunManifest manifest;
  manifest.command = "scan monogamy";
  manifest.parameters = {{"states", std::to_string(states)},
                         {"restarts", std::to_string(restarts)},
                         {"out", out}};
  manifest.master_seed = seed;
  manifest.wall_time_seconds = seconds_since(t0);
  manifest.record_count = result.records.size();
  write_manifest(out, manifest);

  for (const auto& ce : result.counterexamples)
    std::cout << "counterexample=" << write_counterexample(out, ce) << "\n";
  std::cout << "states=" << states << "\n";
  std::cout << "double_violations=" << result.summary.double_violations << "\n";
  print_kv("max_second_largest", result.summary.max_second_largest);
  print_kv("out", out);
  return result.summary.double_violations > 0;
}

bool cmd_scan_gamma(const std::string& family_name, double from, double to, std::size_t points,
                    int restarts, std::uint64_t seed, const std::string& out) {
  if (points < 1) throw std::invalid_argument("scan gamma: --points must be >= 1");
  const GammaFamilyId family = gamma_family_from_string(family_name);
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = points == 1 ? from : from + (to - from) * static_cast<double>(i) / (points - 1);

  const auto sweep = gamma_sweep(family, grid, restarts, seed);
  emit_csv(sweep, out);

  RunManifest manifest;
  manifest.command = "scan gamma";
  manifest.parameters = {{"family", family_name},
                         {"from", format_sig(from, 17)},
                         {"to", format_sig(to, 17)},
                         {"points", std::to_string(points)},
                         {"restarts", std::to_string(restarts)},
                         {"out", out}};
  manifest.master_seed = seed;
  manifest.wall_time_seconds = seconds_since(t0);
  manifest.record_count = sweep.size();
  write_manifest(out, manifest);

  int max_violations = 0;
  bool counterexample = false;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    int v = 0;
    for (double b : {sweep[i].b_ab, sweep[i].b_bc, sweep[i].b_ac})
      if (b > 2.0 + tol::cglmp_violation_eps) ++v;
    max_violations = std::max(max_violations, v);
    if (v >= 2) {
      counterexample = true;
      const StateVector psi = gamma_state(GammaFamily{family, sweep[i].gamma});
      std::cout << "counterexample="
                << write_counterexample(out, Counterexample{i, seed, psi.amplitudes}) << "\n";
    }
  }
  std::cout << "family=" << family_name << "\n";
  std::cout << "points=" << points << "\n";
  std::cout << "max_violations=" << max_violations << "\n";
  print_kv("out", out);
  return counterexample;
}

}  // namespace

int run_cli(const std::vector<std::string>& argv) {
  CLI::App app{"Bell correlation values (CHSH, CGLMP) and symmetric-extendibility tests"};
  app.require_subcommand(1);

  std::string statefile, coeffs_path, family = "psi1";
  std::string out_monogamy = "monogamy_scan.csv", out_gamma = "gamma_sweep.csv";
  int restarts = 16, cglmp_restarts = 24, scan_restarts = 12;
  std::uint64_t seed = 0, scan_seed = 1;
  double tolerance = 1e-8, from = 0.0, to = 2.0;
  int samples = 500, nmin = 3, nmax = 8;
  std::size_t states = 1000, points = 41;

  bool counterexample_found = false;

  auto* chsh_cmd = app.add_subcommand("chsh", "CHSH correlation value of a 2-qubit state");
  chsh_cmd->require_subcommand(1);
  auto* chsh_eval = chsh_cmd->add_subcommand("eval", "closed-form value (correlation-matrix route)");
  chsh_eval->add_option("statefile", statefile, "JSON state file")->required();
  chsh_eval->callback([&] { cmd_chsh_eval(statefile); });
  auto* chsh_oracle = chsh_cmd->add_subcommand("oracle", "direct multi-start maximization");
  chsh_oracle->add_option("statefile", statefile, "JSON state file")->required();
  chsh_oracle->add_option("--restarts", restarts, "optimizer restarts");
  chsh_oracle->add_option("--seed", seed, "RNG seed");
  chsh_oracle->callback([&] { cmd_chsh_oracle(statefile, restarts, seed); });

  auto* chen_cmd = app.add_subcommand("chen", "2-qubit symmetric-extendibility criterion");
  chen_cmd->add_option("statefile", statefile, "JSON state file")->required();
  chen_cmd->callback([&] { cmd_chen(statefile); });

  auto* verdict_cmd = app.add_subcommand("verdict", "symmetric-extension verdict");
  verdict_cmd->require_subcommand(1);
  auto* verdict_qubit = verdict_cmd->add_subcommand("qubit", "2-qubit verdict (decisive)");
  verdict_qubit->add_option("statefile", statefile, "JSON state file")->required();
  verdict_qubit->callback([&] { cmd_verdict_qubit(statefile); });
  auto* verdict_qutrit = verdict_cmd->add_subcommand("qutrit", "2-qutrit verdict (conjectural)");
  verdict_qutrit->add_option("statefile", statefile, "JSON state file")->required();
  verdict_qutrit->add_option("--restarts", cglmp_restarts, "optimizer restarts");
  verdict_qutrit->add_option("--seed", seed, "RNG seed");
  verdict_qutrit->callback([&] { cmd_verdict_qutrit(statefile, cglmp_restarts, seed); });

  auto* dicke_cmd = app.add_subcommand("dicke", "symmetric multiqubit states");
  dicke_cmd->require_subcommand(1);
  auto* dicke_rdm = dicke_cmd->add_subcommand("rdm", "closed-form 2-qubit reduced state");
  dicke_rdm->add_option("--coeffs", coeffs_path, "JSON coefficient file")->required();
  dicke_rdm->callback([&] { cmd_dicke_rdm(coeffs_path); });
  auto* dicke_thm = dicke_cmd->add_subcommand("theorem1", "CHSH bound over random states");
  dicke_thm->add_option("--samples", samples, "states per qubit count");
  dicke_thm->add_option("--seed", seed, "RNG seed");
  dicke_thm->add_option("--nmin", nmin, "smallest qubit count");
  dicke_thm->add_option("--nmax", nmax, "largest qubit count");
  dicke_thm->callback([&] { cmd_dicke_theorem1(samples, seed, nmin, nmax); });

  auto* cglmp_cmd = app.add_subcommand("cglmp", "CGLMP correlation value of a 2-qutrit state");
  cglmp_cmd->require_subcommand(1);
  auto* cglmp_max_cmd = cglmp_cmd->add_subcommand("max", "multi-start maximization over angles");
  cglmp_max_cmd->add_option("statefile", statefile, "JSON state file")->required();
  cglmp_max_cmd->add_option("--restarts", cglmp_restarts, "optimizer restarts");
  cglmp_max_cmd->add_option("--seed", seed, "RNG seed");
  cglmp_max_cmd->add_option("--tol", tolerance, "per-restart convergence tolerance");
  cglmp_max_cmd->callback([&] { cmd_cglmp_max(statefile, cglmp_restarts, seed, tolerance); });

  auto* scan_cmd = app.add_subcommand("scan", "monogamy experiments");
  scan_cmd->require_subcommand(1);
  auto* scan_mono = scan_cmd->add_subcommand("monogamy", "random 3-qutrit monogamy scan");
  scan_mono->add_option("--states", states, "number of random states");
  scan_mono->add_option("--seed", scan_seed, "master seed");
  scan_mono->add_option("--restarts", scan_restarts, "optimizer restarts per reduced state");
  scan_mono->add_option("--out", out_monogamy, "output CSV path");
  scan_mono->callback(
      [&] { counterexample_found = cmd_scan_monogamy(states, scan_seed, scan_restarts, out_monogamy); });
  auto* scan_gamma = scan_cmd->add_subcommand("gamma", "parametrized-family sweep");
  scan_gamma->add_option("--family", family, "psi1 or psi2")
      ->check(CLI::IsMember({"psi1", "psi2"}));
  scan_gamma->add_option("--from", from, "first gamma value");
  scan_gamma->add_option("--to", to, "last gamma value");
  scan_gamma->add_option("--points", points, "grid size");
  scan_gamma->add_option("--restarts", scan_restarts, "optimizer restarts per reduced state");
  scan_gamma->add_option("--seed", scan_seed, "master seed");
  scan_gamma->add_option("--out", out_gamma, "output CSV path");
  scan_gamma->callback([&] {
    counterexample_found =
        cmd_scan_gamma(family, from, to, points, scan_restarts, scan_seed, out_gamma);
  });

  std::vector<std::string> args(argv.begin() + 1, argv.end());
  std::reverse(args.begin(), args.end());  // CLI11 consumes back-to-front
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return counterexample_found ? 3 : 0;
}

}  // namespace bellmono::io
