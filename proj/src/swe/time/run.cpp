#include "swe/time/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "swe/core/error.hpp"
#include "swe/core/kernels.hpp"
#include "swe/diag/spectra.hpp"
#include "swe/dyn/dynamics.hpp"
#include "swe/elliptic/block_system.hpp"
#include "swe/mesh/mesh_io.hpp"
#include "swe/time/rk4.hpp"

namespace swe {

namespace {

void write_snapshot(const std::string& out_dir, double t, const State& s) {
  std::ofstream f(out_dir + "/snapshot_" + format_double(t) + ".csv");
  f << "cell_id,phi,zeta,gamma\n";
  for (std::size_t i = 0; i < s.phi.size(); ++i)
    f << i << ',' << format_double(s.phi[i]) << ',' << format_double(s.zeta[i]) << ','
      << format_double(s.gamma[i]) << '\n';
}

void write_spectrum(const std::string& out_dir, double t, const Mesh& m, const State& s,
                    int lmax) {
  const auto rows = energy_spectrum(m, s.zeta, s.gamma, lmax);
  std::ofstream f(out_dir + "/spectrum_" + format_double(t) + ".csv");
  f << "l,kinetic,enstrophy\n";
  for (const auto& r : rows)
    f << r.l << ',' << format_double(r.kinetic) << ',' << format_double(r.enstrophy) << '\n';
}

}  // namespace

RunResult run_from_state(const Mesh& m, const Operators& ops, const RunConfig& cfg,
                         const CaseFields& fields, const std::string& case_label,
                         const std::string& out_dir) {
  if (!(cfg.dt > 0.0)) throw config_error("run: dt must be positive");
  if (!(cfg.t_end >= cfg.dt)) throw config_error("run: t_end shorter than one step");
  if (cfg.spectra_every > 0.0 && m.bounded())
    throw config_error("run: spectra need a closed mesh");

  const auto wall_start = std::chrono::steady_clock::now();

  const Scheme scheme = scheme_from_string(cfg.scheme);
  Model model(m, ops, ModelConfig{cfg.gravity, cfg.omega, scheme}, fields.bottom);
  EllipticOptions eopt;
  eopt.outer_tol = cfg.outer_tol;
  eopt.outer_max = cfg.outer_max;
  eopt.inner = cfg.inner;
  eopt.inner_tol = cfg.inner_tol;
  eopt.inner_max = cfg.inner_max;
  eopt.amg_refresh_steps = cfg.amg_refresh_steps;
  EllipticSystem ell(m, eopt);

  const int nc = m.ncells();
  const std::size_t n3 = static_cast<std::size_t>(nc) * 3;
  std::vector<double> y(n3);
  std::copy(fields.state.phi.begin(), fields.state.phi.end(), y.begin());
  std::copy(fields.state.zeta.begin(), fields.state.zeta.end(), y.begin() + nc);
  std::copy(fields.state.gamma.begin(), fields.state.gamma.end(), y.begin() + 2 * nc);

  RunResult res;
  std::vector<double> psi(nc, 0.0), chi(nc, 0.0);
  State s;
  s.phi.resize(nc);
  s.zeta.resize(nc);
  s.gamma.resize(nc);
  const auto unpack = [&](const std::vector<double>& yv) {
    std::copy(yv.begin(), yv.begin() + nc, s.phi.begin());
    std::copy(yv.begin() + nc, yv.begin() + 2 * nc, s.zeta.begin());
    std::copy(yv.begin() + 2 * nc, yv.end(), s.gamma.begin());
  };

  const auto solve_current = [&]() {
    ell.set_thickness(s.phi);
    const EllipticStats st = ell.solve(s.zeta, s.gamma, psi, chi);
    res.inner_iters += st.inner_iters;
    res.max_outer = std::max(res.max_outer, st.outer_iters);
  };

  const Rk4::Rhs rhs = [&](const std::vector<double>& yv, double, std::vector<double>& dydt) {
    unpack(yv);
    solve_current();
    const Tendency td = model.tendencies(s, psi, chi);
    std::copy(td.phi.begin(), td.phi.end(), dydt.begin());
    std::copy(td.zeta.begin(), td.zeta.end(), dydt.begin() + nc);
    std::copy(td.gamma.begin(), td.gamma.end(), dydt.begin() + 2 * nc);
    if (cfg.diffusion > 0.0) {
      const auto lz = ops.D.mul(ops.G.mul(s.zeta));
      const auto lg = ops.D.mul(ops.G.mul(s.gamma));
      for (int i = 0; i < nc; ++i) {
        dydt[static_cast<std::size_t>(nc) + i] += cfg.diffusion * lz[i];
        dydt[static_cast<std::size_t>(2 * nc) + i] += cfg.diffusion * lg[i];
      }
    }
  };

  const long long nsteps = std::max<long long>(1, std::llround(cfg.t_end / cfg.dt));
  const long long out_every =
      cfg.output_every > 0.0 ? std::max<long long>(1, std::llround(cfg.output_every / cfg.dt)) : 1;
  const long long snap_every =
      cfg.snapshot_every > 0.0 ? std::max<long long>(1, std::llround(cfg.snapshot_every / cfg.dt))
                               : 0;
  const long long spec_every =
      cfg.spectra_every > 0.0 ? std::max<long long>(1, std::llround(cfg.spectra_every / cfg.dt))
                              : 0;
  const int lmax = cfg.spectra_lmax > 0 ? cfg.spectra_lmax : default_lmax(m);

  const bool emit = !out_dir.empty();
  std::ofstream cons_f, div_f;
  if (emit) {
    std::filesystem::create_directories(out_dir);
    std::ofstream mf(out_dir + "/manifest.txt");
    mf << "format_version=1\n";
    mf << "case=" << case_label << "\n";
    mf << "mesh_cells=" << m.ncells() << "\n";
    mf << "mesh_edges=" << m.nedges() << "\n";
    mf << "mesh_vertices=" << m.nverts() << "\n";
    mf << "mesh_boundary=" << m.nb << "\n";
    mf << "kernels=" << kern::active_name() << "\n";
    mf << config_echo(cfg);
    cons_f.open(out_dir + "/conservation.csv");
    cons_f << "t,energy,enstrophy,mass,circulation,de_rel,dz_rel\n";
    div_f.open(out_dir + "/divergence.csv");
    div_f << "t,l2,linf\n";
  }

  double e0 = 0.0, z0 = 0.0;
  bool have_ref = false;
  const auto observe = [&](long long step) {
    const double t = step * cfg.dt;
    unpack(y);
    solve_current();
    ConservationRow row;
    row.t = t;
    row.energy = model.energy(s, psi, chi);
    row.enstrophy = model.enstrophy(s);
    row.mass = model.mass(s);
    row.circulation = model.circulation(s);
    if (!have_ref) {
      e0 = row.energy;
      z0 = row.enstrophy;
      have_ref = true;
    }
    row.de_rel = (row.energy - e0) / (e0 != 0.0 ? std::abs(e0) : 1.0);
    row.dz_rel = (row.enstrophy - z0) / (z0 != 0.0 ? std::abs(z0) : 1.0);
    res.conservation.push_back(row);

    DivergenceRow dr;
    dr.t = t;
    dr.l2 = area_l2(s.gamma, m.Ac);
    dr.linf = max_abs(s.gamma);
    res.divergence.push_back(dr);

    if (emit) {
      cons_f << format_double(row.t) << ',' << format_double(row.energy) << ','
             << format_double(row.enstrophy) << ',' << format_double(row.mass) << ','
             << format_double(row.circulation) << ',' << format_double(row.de_rel) << ','
             << format_double(row.dz_rel) << '\n';
      div_f << format_double(dr.t) << ',' << format_double(dr.l2) << ','
            << format_double(dr.linf) << '\n';
      if (spec_every > 0 && step % spec_every == 0) write_spectrum(out_dir, t, m, s, lmax);
    }
  };

  observe(0);
  if (emit) write_snapshot(out_dir, 0.0, s);

  Rk4 rk(n3);
  for (long long step = 1; step <= nsteps; ++step) {
    rk.step(rhs, y, (step - 1) * cfg.dt, cfg.dt);
    for (double v : y)
      if (!std::isfinite(v)) throw numerical_error("run: state became non finite");
    if (step % out_every == 0 || step == nsteps) observe(step);
    if (emit) {
      const bool snap = (snap_every > 0 && step % snap_every == 0) || step == nsteps;
      if (snap) {
        unpack(y);
        write_snapshot(out_dir, step * cfg.dt, s);
      }
    }
  }

  unpack(y);
  res.state = s;
  res.t = nsteps * cfg.dt;
  res.steps = static_cast<int>(nsteps);

  if (emit) {
    const auto wall_end = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(wall_end - wall_start).count();
    std::ofstream tf(out_dir + "/timings.txt");
    tf << "wall_seconds=" << secs << "\n";
    tf << "steps=" << nsteps << "\n";
    tf << "inner_iterations=" << res.inner_iters << "\n";
    tf << "max_outer_iterations=" << res.max_outer << "\n";
  }
  return res;
}

RunResult run_case(const Mesh& m, const Operators& ops, const RunConfig& cfg,
                   const std::string& case_name, const std::string& out_dir) {
  const CaseFields fields = init_case(case_name, m, ops, cfg);
  return run_from_state(m, ops, cfg, fields, case_name, out_dir);
}

}  // namespace swe
