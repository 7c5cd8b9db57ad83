#pragma once
#include <stdexcept>
#include <string>

namespace swe {

// Bad user input (unknown key, malformed value, missing requirement). The
// CLI maps this to exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value run configuration, '#' starts a comment. Times are seconds.
// output_every controls the conservation and divergence series (0 means
// every step), snapshot_every adds state dumps between the initial and final
// ones (0 means final only), spectra_every emits spectrum files (0 disables,
// spectra_lmax 0 picks a resolution based truncation).
struct RunConfig {
  std::string scheme = "eec";
  double dt = 0.0;
  double t_end = 0.0;
  double output_every = 0.0;
  double snapshot_every = 0.0;
  double spectra_every = 0.0;
  int spectra_lmax = 0;
  double outer_tol = 1e-10;
  std::string inner = "cg";
  double inner_tol = 1e-11;
  int outer_max = 60;
  int inner_max = 10000;
  int amg_refresh_steps = 10;
  double gravity = 9.80616;
  double omega = 7.292e-5;
  double radius = 6.37122e6;
  double diffusion = 0.0;
  double gyre_mean_depth = 4000.0;
  int galewsky_perturbed = 0;
  unsigned long long seed = 1;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical dump, one key=value per line, every key present.
std::string config_echo(const RunConfig& c);

}  // namespace swe
