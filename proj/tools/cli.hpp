#pragma once

// Command implementations behind the `pdmwell` executable. Kept apart from the
// argument parsing so tests can drive them directly.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pdmwell/pdmwell.hpp"

namespace pdmwell::cli {

enum Exit { ok = 0, config_error = 1, partial = 2 };

struct RunConfig {
  Member member{0, 0};
  double vcal0 = 0.0;
  int n_levels = 4;
  std::string method = "shooting";  // analytic | shooting | oracle | all
  std::string output;               // empty: stdout
  std::string format = "csv";       // csv | json
  std::optional<double> m0;
  std::optional<double> d;
  std::optional<double> hbar;
  int level = 0;  // wavefunction
  SampleGrid grid{};
  ShootingConfig shooting{};
  OracleConfig oracle{};

  bool physical_units() const { return m0 || d || hbar; }

  void validate() const {
    if (!is_supported(member))
      throw UnsupportedFamilyMember("unsupported family member (" + member.to_string() + ")");
    if (n_levels < 1) throw InvalidParams("--levels must be >= 1");
    if (format != "csv" && format != "json") throw InvalidParams("--format must be csv or json");
    if (method != "analytic" && method != "shooting" && method != "oracle" && method != "all")
      throw InvalidParams("--method must be analytic, shooting, oracle or all");
    if (level < 0) throw InvalidParams("--n must be >= 0");
    if (!std::isfinite(vcal0)) throw InvalidParams("--vcal0 must be finite");
    grid.validate();
    shooting.validate();
    oracle.validate();
  }

  /// Physical parameters chosen so that the dimensionless depth is exactly vcal0.
  DimensionlessProblem problem() const {
    const double m = m0.value_or(1.0);
    const double dd = d.value_or(1.0);
    const double h = hbar.value_or(1.0);
    if (!(m > 0.0) || !(dd > 0.0) || !(h > 0.0)) throw InvalidParams("--m0, --d and --hbar must be positive");
    const double scale = h * h / (2.0 * m * dd * dd);
    return make_problem(PotentialSpec(member, vcal0 * scale, dd, m, h));
  }
};

/// Library errors that stem from the request itself rather than from the numerics.
inline bool is_config_error(const Error& e) {
  return dynamic_cast<const InvalidParams*>(&e) || dynamic_cast<const UnsupportedFamilyMember*>(&e) ||
         dynamic_cast<const NonConfining*>(&e) || dynamic_cast<const ComplexSpectrum*>(&e) ||
         dynamic_cast<const SingularOrigin*>(&e) || dynamic_cast<const OutOfDomain*>(&e);
}

inline nlohmann::json problem_meta(const RunConfig& cfg, const DimensionlessProblem& prob) {
  return {{"member", cfg.member.to_string()},
          {"vcal0", prob.vcal0()},
          {"V0", prob.spec().V0()},
          {"m0", prob.spec().m0()},
          {"d", prob.spec().d()},
          {"hbar", prob.spec().hbar()},
          {"energy_scale", prob.energy_scale()}};
}

inline std::vector<io::SpectrumRow> to_rows(const RunConfig& cfg, const DimensionlessProblem& prob,
                                            const std::vector<Eigenpair>& levels) {
  std::vector<io::SpectrumRow> rows;
  for (const auto& l : levels) {
    io::SpectrumRow r{l.n, l.parity, l.energy, std::nullopt, l.provenance, l.err};
    if (cfg.physical_units()) r.e_physical = prob.to_physical(l.energy);
    rows.push_back(r);
  }
  return rows;
}

inline void emit_spectrum(const RunConfig& cfg, const DimensionlessProblem& prob,
                          const std::vector<io::SpectrumRow>& rows, std::ostream& out) {
  if (cfg.format == "json") {
    auto meta = problem_meta(cfg, prob);
    meta["method"] = cfg.method;
    meta["levels"] = cfg.n_levels;
    out << io::dump(io::spectrum_json(meta, rows)) << '\n';
  } else {
    io::write_spectrum_csv(out, rows);
  }
}

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<io::SpectrumRow> rows;
  int code = Exit::ok;
  try {
    cfg.validate();
    const auto prob = cfg.problem();
    const bool all = cfg.method == "all";
    if (cfg.method == "analytic" || all) {
      const auto levels = analytic::analytic_spectrum(prob, cfg.n_levels);
      if (levels) {
        const auto r = to_rows(cfg, prob, *levels);
        rows.insert(rows.end(), r.begin(), r.end());
      } else if (!all) {
        err << "error: member (" << cfg.member.to_string() << ") at Vcal0 = " << cfg.vcal0
            << " has no closed-form spectrum\n";
        return Exit::config_error;
      }
    }
    if (cfg.method == "shooting" || all) {
      try {
        const auto r = to_rows(cfg, prob, find_spectrum(prob, cfg.n_levels, cfg.shooting));
        rows.insert(rows.end(), r.begin(), r.end());
      } catch (const IncompleteSpectrum& e) {
        err << "warning: " << e.what() << '\n';
        const auto r = to_rows(cfg, prob, e.partial());
        rows.insert(rows.end(), r.begin(), r.end());
        code = Exit::partial;
      }
    }
    if (cfg.method == "oracle" || all) {
      const auto r = to_rows(cfg, prob, oracle_spectrum_richardson(prob, cfg.n_levels, cfg.oracle));
      rows.insert(rows.end(), r.begin(), r.end());
    }
    emit_spectrum(cfg, prob, rows, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e) ? Exit::config_error : Exit::partial;
  }
  return code;
}

inline int cmd_wavefunction(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const auto prob = cfg.problem();
    std::vector<Eigenpair> levels;
    try {
      levels = find_spectrum(prob, cfg.level + 1, cfg.shooting);
    } catch (const IncompleteSpectrum& e) {
      err << "error: level " << cfg.level << " is beyond the computed spectrum (" << e.partial().size()
          << " levels found)\n";
      return Exit::partial;
    }
    const Eigenpair& pair = levels.at(cfg.level);
    const auto samples = eigenfunction_numeric(prob, pair, cfg.shooting, cfg.grid);
    const io::SampleMeta meta{cfg.member, prob.vcal0(), pair.n, pair.energy, samples.nodes, samples.norm_const};
    if (cfg.format == "json")
      out << io::dump(io::samples_json(samples, meta)) << '\n';
    else
      io::write_samples_csv(out, samples, meta);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e) ? Exit::config_error : Exit::partial;
  }
  return Exit::ok;
}

/// V(x) on the physical grid and Vcal(z) at the mapped points. The (-2,0)
/// pole at the origin is written as nan.
inline int cmd_potential(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    const auto prob = cfg.problem();
    const int n = cfg.grid.points;
    std::vector<std::array<double, 4>> rows;
    for (int i = 0; i < n; ++i) {
      const double xd = cfg.grid.x_max * (2.0 * i - (n - 1)) / (n - 1);  // units of d
      const double x = xd * prob.spec().d();
      const double z = x_to_z(xd).value();
      const bool pole = prob.member().p < 0 && xd == 0.0;
      const double v = pole ? std::nan("") : potential_x(prob.spec(), x);
      double vz = std::nan("");
      if (!pole && std::abs(z) <= z_guard) vz = effective_potential(prob, ZPoint(z));
      rows.push_back({x, v, z, vz});
    }
    if (cfg.format == "json") {
      nlohmann::json j{{"meta", problem_meta(cfg, prob)}, {"rows", nlohmann::json::array()}};
      for (const auto& r : rows) {
        auto cell = [](double v) { return std::isnan(v) ? nlohmann::json() : nlohmann::json(v); };
        j["rows"].push_back({{"x", r[0]}, {"V", cell(r[1])}, {"z", r[2]}, {"Vcal", cell(r[3])}});
      }
      out << io::dump(j) << '\n';
    } else {
      out << "x,V,z,Vcal\n";
      for (const auto& r : rows)
        out << io::num(r[0]) << ',' << io::num(r[1]) << ',' << io::num(r[2]) << ',' << io::num(r[3]) << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e) ? Exit::config_error : Exit::partial;
  }
  return Exit::ok;
}

struct VerifyOptions {
  bool json = false;
  std::optional<double> tol_override;
};

struct VerifyLine {
  std::string id;
  std::string method;
  double expected;
  double got;
  double deviation;
  double tol;
  bool pass;
};

/// Fine x-space grid for the (-2,0) check: the origin singularity limits the
/// scheme to order 2 mu - 1, so a shorter box and more points are used.
inline OracleConfig verify_oracle_config() {
  OracleConfig oc;
  oc.scheme = OracleScheme::x_space_pdm;
  oc.domain_half_width_x = 10.0;
  oc.n_points = 8000;
  return oc;
}

inline std::vector<VerifyLine> run_fixtures(const VerifyOptions& opt) {
  std::vector<VerifyLine> lines;
  std::map<std::pair<std::pair<int, int>, double>, std::vector<const Fixture*>> groups;
  for (const auto& f : reference_fixtures()) groups[{{f.member.p, f.member.q}, f.vcal0}].push_back(&f);

  for (const auto& [key, fixtures] : groups) {
    const Member m{key.first.first, key.first.second};
    const auto prob = make_problem(m, key.second);
    int n_max = 0;
    for (const auto* f : fixtures) n_max = std::max(n_max, f->n);

    std::vector<std::pair<std::string, std::vector<Eigenpair>>> methods;
    methods.emplace_back("shooting", find_spectrum(prob, n_max + 1));
    if (auto a = analytic::analytic_spectrum(prob, n_max + 1)) methods.emplace_back("analytic", *a);
    if (m.p < 0) methods.emplace_back("oracle_x", oracle_spectrum_richardson(prob, n_max + 1, verify_oracle_config()));

    for (const auto* f : fixtures)
      for (const auto& [name, levels] : methods) {
        const double got = levels.at(f->n).energy;
        const double dev = fixture_deviation(*f, got);
        const double tol = opt.tol_override.value_or(f->tol);
        lines.push_back({f->id, name, f->expected, got, dev, tol, dev <= tol});
      }
  }
  return lines;
}

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<VerifyLine> lines;
  try {
    if (opt.tol_override && !(*opt.tol_override > 0.0)) throw InvalidParams("--tol-override must be positive");
    lines = run_fixtures(opt);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e) ? Exit::config_error : Exit::partial;
  }
  const auto failed = std::count_if(lines.begin(), lines.end(), [](const VerifyLine& l) { return !l.pass; });
  if (opt.json) {
    nlohmann::json j{{"meta", {{"fixtures", lines.size()}, {"failed", failed}}}, {"rows", nlohmann::json::array()}};
    if (opt.tol_override) j["meta"]["tol_override"] = *opt.tol_override;
    for (const auto& l : lines)
      j["rows"].push_back({{"id", l.id},
                           {"method", l.method},
                           {"expected", l.expected},
                           {"got", l.got},
                           {"deviation", l.deviation},
                           {"tol", l.tol},
                           {"pass", l.pass}});
    out << io::dump(j) << '\n';
  } else {
    for (const auto& l : lines)
      out << (l.pass ? "PASS " : "FAIL ") << l.id << " [" << l.method << "] expected " << io::num(l.expected)
          << " got " << io::num(l.got) << " deviation " << l.deviation << " tol " << l.tol << '\n';
    out << (failed == 0 ? "all " : "") << lines.size() - failed << "/" << lines.size() << " fixtures pass\n";
  }
  return failed == 0 ? Exit::ok : Exit::partial;
}

}  // namespace pdmwell::cli
