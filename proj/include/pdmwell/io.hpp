#pragma once

// CSV and JSON emitters/parsers for spectra and sampled wavefunctions.
// CSV numbers carry 17 significant digits; both formats round-trip exactly.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "pdmwell/error.hpp"
#include "pdmwell/model.hpp"

namespace pdmwell::io {

inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Shortest decimal that reads back as the same double.
inline std::string shortest(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline double parse_num(const std::string& s) {
  if (s == "nan" || s.empty()) return std::numeric_limits<double>::quiet_NaN();
  // strtod rather than from_chars: it still returns subnormal tail values.
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw InvalidParams("malformed number '" + s + "'");
  return v;
}

inline int parse_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidParams("malformed integer '" + s + "'");
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct SpectrumRow {
  int n = 0;
  Parity parity = Parity::none;
  double e_dimensionless = 0.0;
  std::optional<double> e_physical;
  Provenance method = Provenance::analytic;
  double err = 0.0;
};

inline const char* spectrum_header = "n,parity,E_dimensionless,E_physical,method,err";

inline void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows) {
  os << spectrum_header << '\n';
  for (const auto& r : rows)
    os << r.n << ',' << to_string(r.parity) << ',' << num(r.e_dimensionless) << ','
       << (r.e_physical ? num(*r.e_physical) : std::string()) << ',' << to_string(r.method) << ','
       << num(r.err) << '\n';
}

inline nlohmann::json spectrum_json(const nlohmann::json& meta, const std::vector<SpectrumRow>& rows) {
  nlohmann::json out{{"meta", meta}, {"rows", nlohmann::json::array()}};
  for (const auto& r : rows)
    out["rows"].push_back({{"n", r.n},
                           {"parity", to_string(r.parity)},
                           {"E_dimensionless", r.e_dimensionless},
                           {"E_physical", r.e_physical ? nlohmann::json(*r.e_physical) : nlohmann::json()},
                           {"method", to_string(r.method)},
                           {"err", r.err}});
  return out;
}

/// Metadata written above wavefunction samples.
struct SampleMeta {
  Member member;
  double vcal0 = 0.0;
  int n = 0;
  double energy = 0.0;
  int nodes = 0;
  double norm = 1.0;
};

inline const char* samples_header = "x,z,psi,phi,psi_sq_normalized";

/// CSV with '#'-prefixed key=value metadata lines, then the header row.
inline void write_samples_csv(std::ostream& os, const WavefunctionSamples& s, const SampleMeta& meta) {
  os << "# member=" << meta.member.to_string() << '\n'
     << "# vcal0=" << num(meta.vcal0) << '\n'
     << "# n=" << meta.n << '\n'
     << "# energy=" << num(meta.energy) << '\n'
     << "# nodes=" << meta.nodes << '\n'
     << "# norm=" << num(meta.norm) << '\n'
     << samples_header << '\n';
  for (std::size_t i = 0; i < s.grid_x.size(); ++i)
    os << num(s.grid_x[i]) << ',' << num(s.grid_z[i]) << ',' << num(s.psi[i]) << ',' << num(s.phi[i]) << ','
       << num(s.psi[i] * s.psi[i]) << '\n';
}

struct ParsedSamples {
  WavefunctionSamples samples;
  SampleMeta meta;
};

inline ParsedSamples read_samples_csv(std::istream& is) {
  ParsedSamples out;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string val = line.substr(eq + 1);
      if (key == "member") {
        const auto comma = val.find(',');
        if (comma == std::string::npos) throw InvalidParams("bad member in sample metadata");
        out.meta.member = {parse_int(val.substr(0, comma)), parse_int(val.substr(comma + 1))};
      } else if (key == "vcal0") {
        out.meta.vcal0 = parse_num(val);
      } else if (key == "n") {
        out.meta.n = parse_int(val);
      } else if (key == "energy") {
        out.meta.energy = parse_num(val);
      } else if (key == "nodes") {
        out.meta.nodes = parse_int(val);
      } else if (key == "norm") {
        out.meta.norm = parse_num(val);
      }
      continue;
    }
    if (!header_seen) {
      if (line != samples_header) throw InvalidParams("unexpected sample header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() != 5) throw InvalidParams("sample row must have 5 columns");
    out.samples.grid_x.push_back(parse_num(cells[0]));
    out.samples.grid_z.push_back(parse_num(cells[1]));
    out.samples.psi.push_back(parse_num(cells[2]));
    out.samples.phi.push_back(parse_num(cells[3]));
  }
  if (!header_seen) throw InvalidParams("sample CSV has no header row");
  out.samples.nodes = out.meta.nodes;
  out.samples.norm_const = out.meta.norm;
  return out;
}

inline nlohmann::json samples_json(const WavefunctionSamples& s, const SampleMeta& meta) {
  nlohmann::json j{{"meta",
                    {{"member", meta.member.to_string()},
                     {"vcal0", meta.vcal0},
                     {"n", meta.n},
                     {"energy", meta.energy},
                     {"nodes", meta.nodes},
                     {"norm", meta.norm}}},
                   {"rows", nlohmann::json::array()}};
  for (std::size_t i = 0; i < s.grid_x.size(); ++i)
    j["rows"].push_back({{"x", s.grid_x[i]},
                         {"z", s.grid_z[i]},
                         {"psi", s.psi[i]},
                         {"phi", s.phi[i]},
                         {"psi_sq_normalized", s.psi[i] * s.psi[i]}});
  return j;
}

/// JSON text. nlohmann writes the shortest decimal that round-trips (at most 17
/// significant digits), so parsing returns the identical double.
inline std::string dump(const nlohmann::json& j) { return j.dump(2); }

}  // namespace pdmwell::io
