#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bellmono/dicke.hpp"
#include "bellmono/linalg.hpp"
#include "bellmono/scan.hpp"

namespace bellmono::io {

inline constexpr const char* kToolVersion = "0.1.0";

// A parsed statefile: kind "pure" holds a StateVector, kind "mixed" a
// DensityMatrix. All module invariants are enforced on load.
struct LoadedState {
  std::string kind;
  std::optional<StateVector> pure;
  std::optional<DensityMatrix> mixed;

  // The density matrix view: |v><v| for pure inputs.
  DensityMatrix as_density() const;
};

LoadedState load_state_file(const std::string& path);

// Amplitudes are written as decimal strings of 17 significant digits so a
// save/load/save round trip is byte-identical.
void save_state_file(const std::string& path, const StateVector& psi);
void save_state_file(const std::string& path, const DensityMatrix& rho);

// {"j": 1.5, "coefficients": [[re, im], ...]} with m ascending from -j.
DickeState load_dicke_coeffs(const std::string& path);

// Every emitted data file is tied to exactly one manifest, written next
// to it as <path>.manifest.json.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t master_seed = 0;
  std::string tool_version = kToolVersion;
  double wall_time_seconds = 0.0;
  std::size_t record_count = 0;
};

void write_manifest(const std::string& data_path, const RunManifest& manifest);

// value -> decimal string with `digits` significant digits ("%.Ng").
std::string format_sig(double value, int digits);

// Fixed-column CSV emitters: header row, 12 significant digits, '\n' line
// endings. Columns: index,seed,b_ab,b_bc,b_ac,violations for scan
// records; gamma,b_ab,b_bc,b_ac for sweep points.
void emit_csv(const std::vector<ScanRecord>& records, const std::string& path);
void emit_csv(const std::vector<SweepPoint>& points, const std::string& path);

std::string scan_csv_header();
std::string sweep_csv_header();
std::string csv_row(const ScanRecord& rec);
std::string csv_row(const SweepPoint& pt);

// Full-provenance amplitude dump for a monogamy counterexample,
// written as <csv_path minus extension>.counterexample-<index>.json.
std::string write_counterexample(const std::string& csv_path, const Counterexample& ce);

// CLI entry point; argv[0] is the program name. Exit codes: 0 success,
// 1 input error, 2 internal numerical failure, 3 monogamy counterexample
// found.
int run_cli(const std::vector<std::string>& argv);

}  // namespace bellmono::io
