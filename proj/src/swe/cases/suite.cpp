#include "swe/cases/suite.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <stdexcept>

#include "swe/diag/norms.hpp"
#include "swe/mesh/mesh_io.hpp"
#include "swe/ops/accuracy.hpp"
#include "swe/ops/assemble.hpp"
#include "swe/time/run.hpp"

namespace swe {

namespace {

ConvergenceRow run_one_level(const ConvergenceLevel& lvl, const RunConfig& base_cfg,
                             const std::string& case_name, const std::string& level_dir) {
  const Mesh m = load_mesh(lvl.mesh_file);
  const Operators ops = build_operators(m);
  RunConfig cfg = base_cfg;
  cfg.dt = lvl.dt;

  const CaseFields fields = init_case(case_name, m, ops, cfg);
  const State initial = fields.state;
  const RunResult res = run_from_state(m, ops, cfg, fields, case_name, level_dir);

  ConvergenceRow row;
  row.mesh_file = lvl.mesh_file;
  row.cells = m.ncells();
  row.spacing_km = mean_spacing_km(m);
  row.thickness_err = area_rel_l2(res.state.phi, initial.phi, m.Ac);
  row.vorticity_err = area_rel_l2(res.state.zeta, initial.zeta, m.Ac);
  for (const auto& d : res.divergence) row.divergence_max = std::max(row.divergence_max, d.l2);
  return row;
}

}  // namespace

ConvergenceReport run_convergence(const std::vector<ConvergenceLevel>& levels,
                                  const RunConfig& base_cfg, const std::string& case_name,
                                  const std::string& out_dir, int jobs) {
  if (levels.size() < 2) throw std::invalid_argument("convergence needs at least two levels");
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

  const auto level_dir = [&](std::size_t k) {
    return out_dir.empty() ? std::string() : out_dir + "/level_" + std::to_string(k);
  };

  ConvergenceReport rep;
  rep.rows.resize(levels.size());
  if (jobs > 1) {
    std::size_t k = 0;
    while (k < levels.size()) {
      const std::size_t batch = std::min<std::size_t>(jobs, levels.size() - k);
      std::vector<std::future<ConvergenceRow>> futs;
      for (std::size_t j = 0; j < batch; ++j)
        futs.push_back(std::async(std::launch::async, run_one_level, levels[k + j], base_cfg,
                                  case_name, level_dir(k + j)));
      for (std::size_t j = 0; j < batch; ++j) rep.rows[k + j] = futs[j].get();
      k += batch;
    }
  } else {
    for (std::size_t k = 0; k < levels.size(); ++k)
      rep.rows[k] = run_one_level(levels[k], base_cfg, case_name, level_dir(k));
  }

  std::vector<double> h, et, ez;
  for (const auto& r : rep.rows) {
    h.push_back(r.spacing_km);
    et.push_back(r.thickness_err);
    ez.push_back(r.vorticity_err);
  }
  rep.thickness_slope = fit_slope(h, et);
  rep.vorticity_slope = fit_slope(h, ez);

  if (!out_dir.empty()) {
    std::ofstream cf(out_dir + "/convergence.csv");
    cf << "mesh,cells,spacing_km,thickness_err,vorticity_err,divergence_max\n";
    for (const auto& r : rep.rows)
      cf << r.mesh_file << ',' << r.cells << ',' << format_double(r.spacing_km) << ','
         << format_double(r.thickness_err) << ',' << format_double(r.vorticity_err) << ','
         << format_double(r.divergence_max) << '\n';
    std::ofstream sf(out_dir + "/slopes.txt");
    sf << "thickness_slope=" << format_double(rep.thickness_slope) << "\n";
    sf << "vorticity_slope=" << format_double(rep.vorticity_slope) << "\n";
  }
  return rep;
}

}  // namespace swe
