// pdmwell: spectra, wavefunctions and potentials of the hyperbolic PDM family.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli.hpp"

namespace {

using pdmwell::cli::RunConfig;

/// Appends "--key value" for every config-file entry the command line did not set.
/// Flags given explicitly therefore always win.
bool merge_config_file(std::vector<std::string>& args, std::ostream& err) {
  auto it = std::find_if(args.begin(), args.end(),
                         [](const std::string& a) { return a == "--config" || a.rfind("--config=", 0) == 0; });
  if (it == args.end()) return true;
  std::string path;
  if (*it == "--config") {
    if (it + 1 == args.end()) {
      err << "error: --config needs a path\n";
      return false;
    }
    path = *(it + 1);
  } else {
    path = it->substr(9);
  }
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open config file " << path << '\n';
    return false;
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    err << "error: config file is not valid JSON: " << e.what() << '\n';
    return false;
  }
  if (!j.is_object()) {
    err << "error: config file must hold a JSON object\n";
    return false;
  }
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      args.push_back(flag);
      std::ostringstream os;
      os.precision(17);
      os << value.get<double>();
      args.push_back(os.str());
    } else {
      err << "error: config key '" << key << "' must be a string, number or boolean\n";
      return false;
    }
  }
  return true;
}

// Consumed by merge_config_file before parsing; registered so CLI11 accepts it.
std::string config_path;

void add_problem_options(CLI::App* cmd, RunConfig& cfg, std::string& member) {
  cmd->add_option("--member", member, "family member as p,q")->required();
  cmd->add_option("--vcal0", cfg.vcal0, "dimensionless depth Vcal0 = 2 m0 d^2 V0 / hbar^2");
  cmd->add_option("--m0", cfg.m0, "mass scale (enables the physical energy column)");
  cmd->add_option("--d", cfg.d, "width scale");
  cmd->add_option("--hbar", cfg.hbar, "reduced Planck constant");
  cmd->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", cfg.output, "output file (default stdout)");
  cmd->add_option("--config", config_path, "JSON file with default values for these flags");
}

void add_shooting_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--delta", cfg.shooting.delta, "wall offset from pi/2");
  cmd->add_option("--tol", cfg.shooting.tol, "bisection half-width");
  cmd->add_option("--e-min", cfg.shooting.e_min, "lower end of the energy window");
  cmd->add_option("--e-max", cfg.shooting.e_max, "upper end of the energy window");
  cmd->add_option("--scan-step", cfg.shooting.scan_step, "bracket scan resolution");
}

bool parse_member(const std::string& text, pdmwell::Member& m) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return false;
  try {
    std::size_t u1 = 0;
    std::size_t u2 = 0;
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    m.p = std::stoi(a, &u1);
    m.q = std::stoi(b, &u2);
    return u1 == a.size() && u2 == b.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!merge_config_file(args, std::cerr)) return pdmwell::cli::Exit::config_error;

  CLI::App app{"Bound states of the hyperbolic position-dependent-mass family", "pdmwell"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string member;
  std::string scheme = "z_space";
  pdmwell::cli::VerifyOptions vopt;

  auto* spectrum = app.add_subcommand("spectrum", "lowest eigenvalues");
  add_problem_options(spectrum, cfg, member);
  add_shooting_options(spectrum, cfg);
  spectrum->add_option("--levels", cfg.n_levels, "number of levels");
  spectrum->add_option("--method", cfg.method, "analytic, shooting, oracle or all")
      ->check(CLI::IsMember({"analytic", "shooting", "oracle", "all"}));
  spectrum->add_option("--scheme", scheme, "oracle scheme")->check(CLI::IsMember({"z_space", "x_space_pdm"}));
  spectrum->add_option("--oracle-points", cfg.oracle.n_points, "oracle grid points");
  spectrum->add_option("--oracle-half-width", cfg.oracle.domain_half_width_x, "x-space oracle box half width");

  auto* wavefunction = app.add_subcommand("wavefunction", "sampled eigenfunction of one level");
  add_problem_options(wavefunction, cfg, member);
  add_shooting_options(wavefunction, cfg);
  wavefunction->add_option("--n", cfg.level, "level index");
  wavefunction->add_option("--x-max", cfg.grid.x_max, "sampling half width in units of d");
  wavefunction->add_option("--points", cfg.grid.points, "number of samples");

  auto* potential = app.add_subcommand("potential", "V(x) and the effective Vcal(z)");
  add_problem_options(potential, cfg, member);
  potential->add_option("--x-max", cfg.grid.x_max, "sampling half width in units of d");
  potential->add_option("--points", cfg.grid.points, "number of samples");

  auto* verify = app.add_subcommand("verify", "reproduce the published reference eigenvalues");
  verify->add_flag("--json", vopt.json, "machine-readable report");
  verify->add_option("--tol-override", vopt.tol_override, "use this tolerance for every fixture");
  verify->add_option("--output", cfg.output, "output file (default stdout)");
  verify->add_option("--config", config_path, "JSON file with default values for these flags");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pdmwell::cli::Exit::config_error;
  }

  if (!verify->parsed() && !parse_member(member, cfg.member)) {
    std::cerr << "error: --member must look like p,q\n";
    return pdmwell::cli::Exit::config_error;
  }
  cfg.oracle.scheme = scheme == "x_space_pdm" ? pdmwell::OracleScheme::x_space_pdm : pdmwell::OracleScheme::z_space;

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      std::cerr << "error: cannot write " << cfg.output << '\n';
      return pdmwell::cli::Exit::config_error;
    }
  }
  std::ostream& out = cfg.output.empty() ? std::cout : file;

  if (spectrum->parsed()) return pdmwell::cli::cmd_spectrum(cfg, out, std::cerr);
  if (wavefunction->parsed()) return pdmwell::cli::cmd_wavefunction(cfg, out, std::cerr);
  if (potential->parsed()) return pdmwell::cli::cmd_potential(cfg, out, std::cerr);
  return pdmwell::cli::cmd_verify(vopt, out, std::cerr);
}
