#include "bellmono/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bellmono::io {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": invalid JSON (" + e.what() + ")");
  }
  return j;
}

Complex parse_amplitude(const json& v, const std::string& path, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw std::invalid_argument(path + ": field '" + field + "' entries must be [re, im] pairs");
  return Complex{v[0].get<double>(), v[1].get<double>()};
}

std::vector<std::size_t> parse_dims(const json& j, const std::string& path) {
  if (!j.contains("subsystem_dims") || !j["subsystem_dims"].is_array())
    throw std::invalid_argument(path + ": missing array field 'subsystem_dims'");
  std::vector<std::size_t> dims;
  for (const auto& d : j["subsystem_dims"]) {
    if (!d.is_number_unsigned() || d.get<std::size_t>() == 0)
      throw std::invalid_argument(path + ": 'subsystem_dims' must hold positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  return dims;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string amplitude_json(const Complex& z) {
  return "[" + format_sig(z.real(), 17) + "," + format_sig(z.imag(), 17) + "]";
}

std::string dims_json(const std::vector<std::size_t>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims[i]);
  }
  return s + "]";
}

std::string strip_extension(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

}  // namespace

std::string format_sig(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

DensityMatrix LoadedState::as_density() const {
  if (mixed) return *mixed;
  return outer(*pure);
}

LoadedState load_state_file(const std::string& path) {
  const json j = load_json(path);
  if (!j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument(path + ": missing string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  const auto dims = parse_dims(j, path);
  if (!j.contains("data") || !j["data"].is_array())
    throw std::invalid_argument(path + ": missing array field 'data'");
  const json& data = j["data"];

  LoadedState state;
  state.kind = kind;
  try {
    if (kind == "pure") {
      std::vector<Complex> amps;
      for (const auto& v : data) amps.push_back(parse_amplitude(v, path, "data"));
      state.pure.emplace(std::move(amps), dims);
    } else if (kind == "mixed") {
      const std::size_t n = data.size();
      ComplexMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        if (!data[i].is_array() || data[i].size() != n)
          throw std::invalid_argument(path + ": 'data' must be a square nested list");
        for (std::size_t k = 0; k < n; ++k)
          m.at(i, k) = parse_amplitude(data[i][k], path, "data");
      }
      state.mixed.emplace(std::move(m), dims);
    } else {
      throw std::invalid_argument(path + ": 'kind' must be \"pure\" or \"mixed\"");
    }
  } catch (const std::invalid_argument& e) {
    // prepend the path so the offending file is always named
    const std::string what = e.what();
    if (what.find(path) == std::string::npos)
      throw std::invalid_argument(path + ": " + what);
    throw;
  }
  return state;
}

void save_state_file(const std::string& path, const StateVector& psi) {
  std::string s = "{\"kind\":\"pure\",\"subsystem_dims\":" + dims_json(psi.subsystem_dims) +
                  ",\"data\":[";
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) {
    if (i) s += ",";
    s += amplitude_json(psi.amplitudes[i]);
  }
  s += "]}\n";
  write_text(path, s);
}

void save_state_file(const std::string& path, const DensityMatrix& rho) {
  std::string s = "{\"kind\":\"mixed\",\"subsystem_dims\":" + dims_json(rho.subsystem_dims) +
                  ",\"data\":[";
  for (std::size_t i = 0; i < rho.dim; ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t k = 0; k < rho.dim; ++k) {
      if (k) s += ",";
      s += amplitude_json(rho.matrix.at(i, k));
    }
    s += "]";
  }
  s += "]}\n";
  write_text(path, s);
}

DickeState load_dicke_coeffs(const std::string& path) {
  const json j = load_json(path);
  if (!j.contains("j") || !j["j"].is_number())
    throw std::invalid_argument(path + ": missing numeric field 'j'");
  if (!j.contains("coefficients") || !j["coefficients"].is_array())
    throw std::invalid_argument(path + ": missing array field 'coefficients'");
  std::vector<Complex> coeffs;
  for (const auto& v : j["coefficients"]) coeffs.push_back(parse_amplitude(v, path, "coefficients"));
  try {
    return DickeState(j["j"].get<double>(), std::move(coeffs));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_manifest(const std::string& data_path, const RunManifest& manifest) {
  json j;
  j["command"] = manifest.command;
  j["parameters"] = manifest.parameters;
  j["master_seed"] = manifest.master_seed;
  j["tool_version"] = manifest.tool_version;
  j["wall_time_seconds"] = manifest.wall_time_seconds;
  j["record_count"] = manifest.record_count;
  write_text(data_path + ".manifest.json", j.dump(2) + "\n");
}

std::string scan_csv_header() { return "index,seed,b_ab,b_bc,b_ac,violations"; }
std::string sweep_csv_header() { return "gamma,b_ab,b_bc,b_ac"; }

std::string csv_row(const ScanRecord& rec) {
  std::ostringstream os;
  os << rec.index << ',' << rec.seed << ',' << format_sig(rec.b_ab, 12) << ','
     << format_sig(rec.b_bc, 12) << ',' << format_sig(rec.b_ac, 12) << ',' << rec.violations;
  return os.str();
}

std::string csv_row(const SweepPoint& pt) {
  std::ostringstream os;
  os << format_sig(pt.gamma, 12) << ',' << format_sig(pt.b_ab, 12) << ','
     << format_sig(pt.b_bc, 12) << ',' << format_sig(pt.b_ac, 12);
  return os.str();
}

namespace {

template <typename Record>
void emit_csv_impl(const std::vector<Record>& records, const std::string& path,
                   const std::string& header) {
  if (records.empty()) throw std::invalid_argument("emit_csv: empty record list");
  std::string s = header + "\n";
  for (const auto& r : records) s += csv_row(r) + "\n";
  write_text(path, s);
}

}  // namespace

void emit_csv(const std::vector<ScanRecord>& records, const std::string& path) {
  emit_csv_impl(records, path, scan_csv_header());
}

void emit_csv(const std::vector<SweepPoint>& points, const std::string& path) {
  emit_csv_impl(points, path, sweep_csv_header());
}

std::string write_counterexample(const std::string& csv_path, const Counterexample& ce) {
  const std::string path =
      strip_extension(csv_path) + ".counterexample-" + std::to_string(ce.index) + ".json";
  std::string s = "{\"index\":" + std::to_string(ce.index) +
                  ",\"seed\":" + std::to_string(ce.seed) +
                  ",\"subsystem_dims\":[3,3,3],\"amplitudes\":[";
  for (std::size_t i = 0; i < ce.amplitudes.size(); ++i) {
    if (i) s += ",";
    s += amplitude_json(ce.amplitudes[i]);
  }
  s += "]}\n";
  write_text(path, s);
  return path;
}

}  // namespace bellmono::io
