#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "swe/cases/cases.hpp"
#include "swe/core/error.hpp"
#include "swe/time/config.hpp"
#include "swe/time/rk4.hpp"
#include "swe/time/run.hpp"
#include "tests/test_support.hpp"

namespace {

double decay_error(double dt) {
  // y' = -y, y(0) = 1, integrated to t = 1.
  swe::Rk4 rk(1);
  std::vector<double> y = {1.0};
  const int n = static_cast<int>(std::lround(1.0 / dt));
  const auto rhs = [](const std::vector<double>& s, double, std::vector<double>& d) {
    d[0] = -s[0];
  };
  for (int k = 0; k < n; ++k) rk.step(rhs, y, k * dt, dt);
  return std::abs(y[0] - std::exp(-1.0));
}

swe::RunConfig tc2_config() {
  swe::RunConfig cfg;
  cfg.scheme = "ec";
  cfg.dt = 1800.0;
  cfg.t_end = 3.0 * 1800.0;
  return cfg;
}

}  // namespace

TEST_SUITE("timestep") {

TEST_CASE("fourth order on the decay equation") {
  const double e1 = decay_error(0.1);
  const double e2 = decay_error(0.05);
  CHECK(e1 / e2 > 14.0);
  CHECK(e1 / e2 < 18.0);
}

TEST_CASE("one step reproduces the degree four stability polynomial") {
  const double dt = 0.37;
  swe::Rk4 rk(1);
  std::vector<double> y = {1.0};
  rk.step([](const std::vector<double>& s, double, std::vector<double>& d) { d[0] = -2.0 * s[0]; },
          y, 0.0, dt);
  const double z = -2.0 * dt;
  const double r = 1.0 + z + z * z / 2.0 + z * z * z / 6.0 + z * z * z * z / 24.0;
  CHECK(y[0] == doctest::Approx(r).epsilon(1e-15));
}

TEST_CASE("stage times are honored") {
  // y' = 3 t^2 integrates exactly (the tableau is a Simpson rule in t).
  swe::Rk4 rk(1);
  std::vector<double> y = {0.0};
  const double dt = 0.1;
  for (int k = 0; k < 10; ++k)
    rk.step([](const std::vector<double>&, double t, std::vector<double>& d) { d[0] = 3.0 * t * t; },
            y, k * dt, dt);
  CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("config text parses, echoes, and rejects") {
  const swe::RunConfig c = swe::parse_config_text(
      "dt = 60\n"
      "t_end=120\n"
      "scheme = ec\n"
      "# values below override defaults\n"
      "\n"
      "seed=7\n"
      "outer_tol 	= 1e-12\n");
  CHECK(c.dt == 60.0);
  CHECK(c.t_end == 120.0);
  CHECK(c.scheme == "ec");
  CHECK(c.seed == 7);
  CHECK(c.outer_tol == 1e-12);
  CHECK(c.gravity == 9.80616);  // untouched default

  // The canonical echo is a fixpoint of the parser.
  const std::string once = swe::config_echo(c);
  CHECK(swe::config_echo(swe::parse_config_text(once)) == once);

  CHECK_THROWS_AS(swe::parse_config_text("cfl = 0.5\n"), swe::config_error);
  CHECK_THROWS_AS(swe::parse_config_text("dt = fast\n"), swe::config_error);
  CHECK_THROWS_AS(swe::parse_config_file("/nonexistent/run.cfg"), swe::config_error);
}

TEST_CASE("run argument validation") {
  const testsup::MeshPack& p = testsup::global_pack(2);
  const auto fields = swe::init_case("swstc2", p.mesh, p.ops, tc2_config());

  swe::RunConfig bad = tc2_config();
  bad.dt = 0.0;
  CHECK_THROWS_AS(swe::run_from_state(p.mesh, p.ops, bad, fields, "swstc2", ""),
                  swe::config_error);

  bad = tc2_config();
  bad.t_end = 900.0;  // shorter than one step
  CHECK_THROWS_AS(swe::run_from_state(p.mesh, p.ops, bad, fields, "swstc2", ""),
                  swe::config_error);

  const testsup::MeshPack& h = testsup::hemi_pack();
  swe::RunConfig spec = tc2_config();
  spec.spectra_every = 1800.0;
  const auto hfields = swe::init_case("swstc2", h.mesh, h.ops, spec);
  CHECK_THROWS_AS(swe::run_from_state(h.mesh, h.ops, spec, hfields, "swstc2", ""),
                  swe::config_error);

  auto broken = fields;
  broken.state.phi[4] = std::nan("");
  CHECK_THROWS_AS(swe::run_from_state(p.mesh, p.ops, tc2_config(), broken, "swstc2", ""),
                  swe::numerical_error);
}

TEST_CASE("step count comes from rounding the horizon") {
  const testsup::MeshPack& p = testsup::global_pack(2);
  const auto fields = swe::init_case("swstc2", p.mesh, p.ops, tc2_config());
  swe::RunConfig cfg = tc2_config();
  cfg.dt = 1800.0;
  cfg.t_end = 1800.0;
  const auto r = swe::run_from_state(p.mesh, p.ops, cfg, fields, "swstc2", "");
  CHECK(r.steps == 1);
  CHECK(r.t == 1800.0);
}

TEST_CASE("short balanced run holds the invariants") {
  const testsup::MeshPack& p = testsup::global_pack(2);
  const swe::RunConfig cfg = tc2_config();
  const auto fields = swe::init_case("swstc2", p.mesh, p.ops, cfg);
  const auto r = swe::run_from_state(p.mesh, p.ops, cfg, fields, "swstc2", "");

  CHECK(r.steps == 3);
  CHECK(r.t == cfg.t_end);
  for (double v : r.state.phi) CHECK(std::isfinite(v));

  REQUIRE(r.conservation.size() == 4);  // initial row plus one per step
  const auto& last = r.conservation.back();
  CHECK(std::abs(last.de_rel) < 1e-9);
  CHECK(std::abs(last.dz_rel) < 1e-7);
  CHECK(std::abs(last.mass - r.conservation.front().mass) <=
        1e-13 * r.conservation.front().mass);

  REQUIRE(r.divergence.size() == 4);
  for (const auto& row : r.divergence) CHECK(row.l2 < 1e-6);
  CHECK(r.inner_iters > 0);
  CHECK(r.max_outer <= 20);
}

TEST_CASE("runs are bit reproducible") {
  const testsup::MeshPack& p = testsup::global_pack(2);
  const swe::RunConfig cfg = tc2_config();
  const auto fields = swe::init_case("swstc2", p.mesh, p.ops, cfg);
  const auto a = swe::run_from_state(p.mesh, p.ops, cfg, fields, "swstc2", "");
  const auto b = swe::run_from_state(p.mesh, p.ops, cfg, fields, "swstc2", "");
  CHECK(std::memcmp(a.state.phi.data(), b.state.phi.data(),
                    a.state.phi.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(a.state.zeta.data(), b.state.zeta.data(),
                    a.state.zeta.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(a.state.gamma.data(), b.state.gamma.data(),
                    a.state.gamma.size() * sizeof(double)) == 0);
}

TEST_CASE("explicit diffusion drains energy") {
  const testsup::MeshPack& p = testsup::global_pack(2);
  swe::RunConfig cfg = tc2_config();
  cfg.diffusion = 1e5;
  const auto fields = swe::init_case("swstc2", p.mesh, p.ops, cfg);
  const auto r = swe::run_from_state(p.mesh, p.ops, cfg, fields, "swstc2", "");
  CHECK(r.conservation.back().de_rel < 0.0);
  CHECK(std::abs(r.conservation.back().de_rel) > 1e-10);
}

}  // TEST_SUITE
