#include "swe/time/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "swe/mesh/mesh_io.hpp"

namespace swe {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_num(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("config: bad numeric value for " + key + ": " + v);
  }
}

int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_num(key, v);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x) throw config_error("config: expected integer for " + key);
  return i;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config: line " + std::to_string(lineno) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (val.empty()) throw config_error("config: empty value for " + key);

    if (key == "scheme")
      c.scheme = val;
    else if (key == "dt")
      c.dt = parse_num(key, val);
    else if (key == "t_end")
      c.t_end = parse_num(key, val);
    else if (key == "output_every")
      c.output_every = parse_num(key, val);
    else if (key == "snapshot_every")
      c.snapshot_every = parse_num(key, val);
    else if (key == "spectra_every")
      c.spectra_every = parse_num(key, val);
    else if (key == "spectra_lmax")
      c.spectra_lmax = parse_int(key, val);
    else if (key == "outer_tol")
      c.outer_tol = parse_num(key, val);
    else if (key == "inner")
      c.inner = val;
    else if (key == "inner_tol")
      c.inner_tol = parse_num(key, val);
    else if (key == "outer_max")
      c.outer_max = parse_int(key, val);
    else if (key == "inner_max")
      c.inner_max = parse_int(key, val);
    else if (key == "amg_refresh_steps")
      c.amg_refresh_steps = parse_int(key, val);
    else if (key == "gravity")
      c.gravity = parse_num(key, val);
    else if (key == "omega")
      c.omega = parse_num(key, val);
    else if (key == "radius")
      c.radius = parse_num(key, val);
    else if (key == "diffusion")
      c.diffusion = parse_num(key, val);
    else if (key == "gyre_mean_depth")
      c.gyre_mean_depth = parse_num(key, val);
    else if (key == "galewsky_perturbed")
      c.galewsky_perturbed = parse_int(key, val);
    else if (key == "seed")
      c.seed = static_cast<unsigned long long>(parse_num(key, val));
    else
      throw config_error("config: unknown key " + key);
  }

  if (c.scheme != "ec" && c.scheme != "eec" && c.scheme != "energy" &&
      c.scheme != "energy_enstrophy")
    throw config_error("config: scheme must be ec or eec");
  if (c.inner != "cg" && c.inner != "amg") throw config_error("config: inner must be cg or amg");
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_echo(const RunConfig& c) {
  std::ostringstream out;
  out << "scheme=" << c.scheme << "\n";
  out << "dt=" << format_double(c.dt) << "\n";
  out << "t_end=" << format_double(c.t_end) << "\n";
  out << "output_every=" << format_double(c.output_every) << "\n";
  out << "snapshot_every=" << format_double(c.snapshot_every) << "\n";
  out << "spectra_every=" << format_double(c.spectra_every) << "\n";
  out << "spectra_lmax=" << c.spectra_lmax << "\n";
  out << "outer_tol=" << format_double(c.outer_tol) << "\n";
  out << "inner=" << c.inner << "\n";
  out << "inner_tol=" << format_double(c.inner_tol) << "\n";
  out << "outer_max=" << c.outer_max << "\n";
  out << "inner_max=" << c.inner_max << "\n";
  out << "amg_refresh_steps=" << c.amg_refresh_steps << "\n";
  out << "gravity=" << format_double(c.gravity) << "\n";
  out << "omega=" << format_double(c.omega) << "\n";
  out << "radius=" << format_double(c.radius) << "\n";
  out << "diffusion=" << format_double(c.diffusion) << "\n";
  out << "gyre_mean_depth=" << format_double(c.gyre_mean_depth) << "\n";
  out << "galewsky_perturbed=" << c.galewsky_perturbed << "\n";
  out << "seed=" << c.seed << "\n";
  return out.str();
}

}  // namespace swe
