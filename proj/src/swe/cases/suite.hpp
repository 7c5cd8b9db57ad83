#pragma once

#include <string>
#include <vector>

#include "swe/time/config.hpp"

namespace swe {

// One resolution level of a convergence study: a mesh file plus the time step
// to use on it (finer meshes need proportionally smaller steps).
struct ConvergenceLevel {
  std::string mesh_file;
  double dt = 0.0;
};

struct ConvergenceRow {
  std::string mesh_file;
  int cells = 0;
  double spacing_km = 0.0;
  double thickness_err = 0.0;
  double vorticity_err = 0.0;
  double divergence_max = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double thickness_slope = 0.0;
  double vorticity_slope = 0.0;
};

// Runs the named case on each level and measures the final thickness and
// vorticity departure from the initial state in the area-weighted relative
// L2 norm. Intended for steady cases where that departure is pure
// discretization error. `jobs` > 1 runs levels concurrently. When `out_dir`
// is nonempty, per-level artifacts land in <out_dir>/level_<k> and the
// summary in <out_dir>/convergence.csv and <out_dir>/slopes.txt.
ConvergenceReport run_convergence(const std::vector<ConvergenceLevel>& levels,
                                  const RunConfig& base_cfg, const std::string& case_name,
                                  const std::string& out_dir, int jobs);

}  // namespace swe
