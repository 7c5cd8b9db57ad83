#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swe/cases/suite.hpp"
#include "swe/core/error.hpp"
#include "swe/core/kernels.hpp"
#include "swe/dyn/dynamics.hpp"
#include "swe/elliptic/block_system.hpp"
#include "swe/mesh/generate.hpp"
#include "swe/mesh/mesh_io.hpp"
#include "swe/ops/accuracy.hpp"
#include "swe/ops/assemble.hpp"
#include "swe/time/run.hpp"

namespace {

constexpr double kDegree = M_PI / 180.0;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<swe::geo::Vec3> read_polygon(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw swe::config_error("cannot open polygon file: " + path);
  std::vector<swe::geo::Vec3> pts;
  std::string line;
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double lon, lat;
    if (ls >> lon >> lat) pts.push_back(swe::geo::from_latlon(lat * kDegree, lon * kDegree));
  }
  if (pts.size() < 3) throw swe::config_error("polygon file has fewer than 3 points: " + path);
  return pts;
}

void write_polygon(const std::string& path, const std::vector<swe::geo::Vec3>& pts) {
  std::ofstream f(path);
  if (!f) throw swe::config_error("cannot write polygon file: " + path);
  f << "# lon_deg lat_deg, counterclockwise\n";
  for (const auto& p : pts)
    f << swe::format_double(swe::geo::lon_of(p) / kDegree) << ' '
      << swe::format_double(swe::geo::lat_of(p) / kDegree) << '\n';
}

std::vector<double> random_thickness(const swe::Mesh& m, std::uint64_t seed, double mean) {
  std::mt19937_64 rng(seed);
  const auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<double> phi(m.ncells());
  for (auto& v : phi) v = mean * (0.5 + unit());
  return phi;
}

int cmd_mesh_gen(const std::string& type, int level, const std::string& polygon_file,
                 int interior, int lloyd, std::uint64_t seed, double radius,
                 const std::string& out) {
  swe::Mesh m;
  if (type == "global") {
    m = swe::generate_global_scvt(level, lloyd, radius);
  } else if (type == "bounded") {
    if (polygon_file.empty() || interior <= 0)
      throw swe::config_error("bounded meshes need --polygon and --interior");
    m = swe::generate_bounded_scvt(read_polygon(polygon_file), interior, lloyd, seed, radius);
  } else {
    throw swe::config_error("unknown mesh type: " + type);
  }
  swe::save_mesh(m, out);
  std::cout << "wrote " << out << ": cells=" << m.ncells() << " edges=" << m.nedges()
            << " vertices=" << m.nverts() << " boundary=" << m.nb << "\n";
  return 0;
}

int cmd_mesh_polygon(const std::string& type, int count, const std::string& out) {
  std::vector<swe::geo::Vec3> pts;
  if (type == "hemisphere")
    pts = swe::hemisphere_polygon(count);
  else if (type == "gyre")
    pts = swe::gyre_polygon(count);
  else
    throw swe::config_error("unknown polygon type: " + type);
  write_polygon(out, pts);
  std::cout << "wrote " << out << ": " << pts.size() << " points\n";
  return 0;
}

int cmd_mesh_check(const std::string& path) {
  const swe::Mesh m = swe::load_mesh(path);
  double total_area = 0.0;
  for (double a : m.Ac) total_area += a;
  const int euler = m.ncells() - m.nedges() + m.nverts();
  double min_l = 1e300, min_d = 1e300;
  for (const auto& e : m.edges) {
    min_l = std::min(min_l, e.l);
    min_d = std::min(min_d, e.d);
  }
  std::cout << "cells=" << m.ncells() << " edges=" << m.nedges() << " vertices=" << m.nverts()
            << " boundary=" << m.nb << "\n";
  std::cout << "euler=" << euler << " (expect " << (m.bounded() ? 1 : 2) << ")\n";
  std::cout << "area=" << swe::format_double(total_area);
  if (!m.bounded())
    std::cout << " sphere=" << swe::format_double(4.0 * M_PI * m.radius * m.radius);
  std::cout << "\n";
  std::cout << "mean_spacing_km=" << swe::format_double(swe::mean_spacing_km(m))
            << " min_wall_m=" << swe::format_double(min_l)
            << " min_center_dist_m=" << swe::format_double(min_d) << "\n";
  return 0;
}

int cmd_ops_accuracy(const std::string& meshes_csv, const std::string& kinds_csv,
                     const std::string& out) {
  const auto mesh_files = split_csv(meshes_csv);
  if (mesh_files.empty()) throw swe::config_error("ops accuracy needs --meshes");
  const auto kinds = swe::expand_kinds(kinds_csv);

  std::ostringstream csv;
  csv << "mesh,kind,resolution_km,l2,linf\n";
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> series;
  for (const auto& mf : mesh_files) {
    const swe::Mesh m = swe::load_mesh(mf);
    const swe::Operators ops = swe::build_operators(m);
    for (const auto& row : swe::accuracy_rows(m, ops, kinds)) {
      csv << mf << ',' << row.kind << ',' << swe::format_double(row.resolution_km) << ','
          << swe::format_double(row.l2) << ',' << swe::format_double(row.linf) << '\n';
      series[row.kind].first.push_back(row.resolution_km);
      series[row.kind].second.push_back(row.l2);
    }
  }
  std::cout << csv.str();
  if (mesh_files.size() >= 2) {
    std::cout << "slopes (l2):\n";
    for (const auto& [kind, sv] : series)
      std::cout << "  " << kind << " " << swe::format_double(swe::fit_slope(sv.first, sv.second))
                << "\n";
  }
  if (!out.empty()) {
    std::ofstream f(out);
    f << csv.str();
  }
  return 0;
}

int cmd_elliptic_structure(const std::string& mesh_file, std::uint64_t seed) {
  const swe::Mesh m = swe::load_mesh(mesh_file);
  const swe::Operators ops = swe::build_operators(m);
  const auto phi = random_thickness(m, seed, 1000.0);
  const swe::StructureReport rep = swe::verify_block_structure(m, ops, phi);
  std::cout << "p_symmetry_defect=" << swe::format_double(rep.p_sym) << "\n";
  std::cout << "q_symmetry_defect=" << swe::format_double(rep.q_sym) << "\n";
  std::cout << "r_skew_defect=" << swe::format_double(rep.r_skew) << "\n";
  std::cout << "pq_difference=" << swe::format_double(rep.pq_diff) << "\n";
  return 0;
}

int cmd_elliptic_bench(const std::string& mesh_file, const std::string& inner, double outer_tol,
                       double inner_tol, bool uniform, std::uint64_t seed) {
  const swe::Mesh m = swe::load_mesh(mesh_file);
  swe::EllipticOptions opt;
  opt.inner = inner;
  opt.outer_tol = outer_tol;
  opt.inner_tol = inner_tol;
  swe::EllipticSystem ell(m, opt);

  const int nc = m.ncells();
  std::vector<double> phi =
      uniform ? std::vector<double>(nc, 1000.0) : random_thickness(m, seed, 1000.0);
  std::vector<double> zeta(nc), gamma(nc);
  for (int i = 0; i < nc; ++i) {
    zeta[i] = 1e8 * swe::field_alpha(m.xc[i], m.radius);
    gamma[i] = swe::field_beta(m.xc[i], m.radius) / m.radius;
  }
  std::vector<double> psi(nc, 0.0), chi(nc, 0.0);
  ell.set_thickness(phi);
  const swe::EllipticStats cold = ell.solve(zeta, gamma, psi, chi);
  std::cout << "cold: outer=" << cold.outer_iters << " inner=" << cold.inner_iters
            << " residual=" << swe::format_double(cold.rel_residual) << "\n";
  const swe::EllipticStats warm = ell.solve(zeta, gamma, psi, chi);
  std::cout << "warm: outer=" << warm.outer_iters << " inner=" << warm.inner_iters
            << " residual=" << swe::format_double(warm.rel_residual) << "\n";
  return 0;
}

int cmd_run(const std::string& mesh_file, const std::string& case_name,
            const std::string& config_file, const std::string& out_dir) {
  const swe::Mesh m = swe::load_mesh(mesh_file);
  const swe::Operators ops = swe::build_operators(m);
  swe::RunConfig cfg = swe::parse_config_file(config_file);
  const swe::RunResult res = swe::run_case(m, ops, cfg, case_name, out_dir);
  const auto& last = res.conservation.back();
  double div_max = 0.0;
  for (const auto& d : res.divergence) div_max = std::max(div_max, d.l2);
  std::cout << "steps=" << res.steps << " t=" << swe::format_double(res.t) << "\n";
  std::cout << "energy_drift=" << swe::format_double(last.de_rel)
            << " enstrophy_drift=" << swe::format_double(last.dz_rel) << "\n";
  std::cout << "divergence_l2_max=" << swe::format_double(div_max) << "\n";
  std::cout << "inner_iterations=" << res.inner_iters << " max_outer=" << res.max_outer << "\n";
  return 0;
}

int cmd_suite_convergence(const std::string& case_name, const std::string& meshes_csv,
                          const std::string& dts_csv, const std::string& config_file,
                          const std::string& out_dir, int jobs) {
  const auto mesh_files = split_csv(meshes_csv);
  const auto dts = split_csv(dts_csv);
  if (mesh_files.size() != dts.size())
    throw swe::config_error("suite convergence: --meshes and --dts must have matching lengths");
  std::vector<swe::ConvergenceLevel> levels;
  for (std::size_t k = 0; k < mesh_files.size(); ++k) {
    swe::ConvergenceLevel lvl;
    lvl.mesh_file = mesh_files[k];
    try {
      lvl.dt = std::stod(dts[k]);
    } catch (const std::exception&) {
      throw swe::config_error("bad dt value: " + dts[k]);
    }
    levels.push_back(lvl);
  }
  swe::RunConfig cfg;
  if (!config_file.empty()) cfg = swe::parse_config_file(config_file);
  const swe::ConvergenceReport rep =
      swe::run_convergence(levels, cfg, case_name, out_dir, jobs);
  std::cout << "mesh,cells,spacing_km,thickness_err,vorticity_err,divergence_max\n";
  for (const auto& r : rep.rows)
    std::cout << r.mesh_file << ',' << r.cells << ',' << swe::format_double(r.spacing_km) << ','
              << swe::format_double(r.thickness_err) << ','
              << swe::format_double(r.vorticity_err) << ','
              << swe::format_double(r.divergence_max) << '\n';
  std::cout << "thickness_slope=" << swe::format_double(rep.thickness_slope) << "\n";
  std::cout << "vorticity_slope=" << swe::format_double(rep.vorticity_slope) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shallow water dynamics on spherical Voronoi meshes"};
  app.require_subcommand(1);
  std::function<int()> action;

  // mesh gen / polygon / check
  auto* mesh = app.add_subcommand("mesh", "Mesh generation and inspection");
  mesh->require_subcommand(1);
  {
    auto* gen = mesh->add_subcommand("gen", "Generate a mesh");
    auto type = std::make_shared<std::string>("global");
    auto level = std::make_shared<int>(4);
    auto polygon = std::make_shared<std::string>();
    auto interior = std::make_shared<int>(0);
    auto lloyd = std::make_shared<int>(200);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto radius = std::make_shared<double>(6.37122e6);
    auto out = std::make_shared<std::string>();
    gen->add_option("--type", *type, "global or bounded");
    gen->add_option("--level", *level, "global refinement level (10*4^L+2 cells)");
    gen->add_option("--polygon", *polygon, "boundary polygon file (lon lat degrees per line)");
    gen->add_option("--interior", *interior, "bounded interior generator count");
    gen->add_option("--lloyd", *lloyd, "Lloyd relaxation sweeps");
    gen->add_option("--seed", *seed, "seed for interior sampling");
    gen->add_option("--radius", *radius, "sphere radius in meters");
    gen->add_option("--out", *out, "output mesh file")->required();
    gen->callback([=, &action] {
      action = [=] {
        return cmd_mesh_gen(*type, *level, *polygon, *interior, *lloyd, *seed, *radius, *out);
      };
    });

    auto* poly = mesh->add_subcommand("polygon", "Write a shipped boundary polygon");
    auto ptype = std::make_shared<std::string>();
    auto pcount = std::make_shared<int>(0);
    auto pout = std::make_shared<std::string>();
    poly->add_option("--type", *ptype, "hemisphere or gyre")->required();
    poly->add_option("--count", *pcount, "number of boundary points")->required();
    poly->add_option("--out", *pout, "output polygon file")->required();
    poly->callback([=, &action] {
      action = [=] { return cmd_mesh_polygon(*ptype, *pcount, *pout); };
    });

    auto* check = mesh->add_subcommand("check", "Load a mesh and print its vitals");
    auto cpath = std::make_shared<std::string>();
    check->add_option("--mesh", *cpath, "mesh file")->required();
    check->callback([=, &action] {
      action = [=] { return cmd_mesh_check(*cpath); };
    });
  }

  // ops accuracy
  auto* opsc = app.add_subcommand("ops", "Discrete operator studies");
  opsc->require_subcommand(1);
  {
    auto* acc = opsc->add_subcommand("accuracy", "Operator convergence table");
    auto meshes = std::make_shared<std::string>();
    auto kinds = std::make_shared<std::string>("all");
    auto out = std::make_shared<std::string>();
    acc->add_option("--meshes", *meshes, "comma separated mesh files, coarse to fine")
        ->required();
    acc->add_option("--kinds", *kinds, "comma separated kinds, or 'all'");
    acc->add_option("--out", *out, "also write the table to this CSV file");
    acc->callback([=, &action] {
      action = [=] { return cmd_ops_accuracy(*meshes, *kinds, *out); };
    });
  }

  // elliptic structure / bench
  auto* ell = app.add_subcommand("elliptic", "Coupled potential solver checks");
  ell->require_subcommand(1);
  {
    auto* st = ell->add_subcommand("structure", "Block structure identities");
    auto smesh = std::make_shared<std::string>();
    auto sseed = std::make_shared<std::uint64_t>(1);
    st->add_option("--mesh", *smesh, "mesh file")->required();
    st->add_option("--seed", *sseed, "random thickness seed");
    st->callback([=, &action] {
      action = [=] { return cmd_elliptic_structure(*smesh, *sseed); };
    });

    auto* be = ell->add_subcommand("bench", "Solve a manufactured system, report iterations");
    auto bmesh = std::make_shared<std::string>();
    auto binner = std::make_shared<std::string>("cg");
    auto btol = std::make_shared<double>(1e-10);
    auto bitol = std::make_shared<double>(1e-11);
    auto buniform = std::make_shared<bool>(false);
    auto bseed = std::make_shared<std::uint64_t>(1);
    be->add_option("--mesh", *bmesh, "mesh file")->required();
    be->add_option("--inner", *binner, "inner solver: cg or amg");
    be->add_option("--outer-tol", *btol, "joint residual tolerance");
    be->add_option("--inner-tol", *bitol, "inner solve tolerance");
    be->add_flag("--uniform", *buniform, "uniform thickness instead of random");
    be->add_option("--seed", *bseed, "random thickness seed");
    be->callback([=, &action] {
      action = [=] {
        return cmd_elliptic_bench(*bmesh, *binner, *btol, *bitol, *buniform, *bseed);
      };
    });
  }

  // run
  {
    auto* run = app.add_subcommand("run", "Time integrate a test case");
    auto rmesh = std::make_shared<std::string>();
    auto rcase = std::make_shared<std::string>();
    auto rconfig = std::make_shared<std::string>();
    auto rout = std::make_shared<std::string>();
    run->add_option("--mesh", *rmesh, "mesh file")->required();
    run->add_option("--case", *rcase, "swstc2, swstc5, galewsky or gyre")->required();
    run->add_option("--config", *rconfig, "run configuration file")->required();
    run->add_option("--out", *rout, "artifact directory")->required();
    run->callback([=, &action] {
      action = [=] { return cmd_run(*rmesh, *rcase, *rconfig, *rout); };
    });
  }

  // suite convergence
  auto* suite = app.add_subcommand("suite", "Multi level studies");
  suite->require_subcommand(1);
  {
    auto* conv = suite->add_subcommand("convergence", "Steady case refinement study");
    auto ccase = std::make_shared<std::string>("swstc2");
    auto cmeshes = std::make_shared<std::string>();
    auto cdts = std::make_shared<std::string>();
    auto cconfig = std::make_shared<std::string>();
    auto cout_dir = std::make_shared<std::string>();
    auto cjobs = std::make_shared<int>(1);
    conv->add_option("--case", *ccase, "case name");
    conv->add_option("--meshes", *cmeshes, "comma separated mesh files")->required();
    conv->add_option("--dts", *cdts, "comma separated time steps, one per mesh")->required();
    conv->add_option("--config", *cconfig, "base run configuration file");
    conv->add_option("--out", *cout_dir, "artifact directory");
    conv->add_option("--jobs", *cjobs, "levels to run concurrently");
    conv->callback([=, &action] {
      action = [=] {
        return cmd_suite_convergence(*ccase, *cmeshes, *cdts, *cconfig, *cout_dir, *cjobs);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const swe::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const swe::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
