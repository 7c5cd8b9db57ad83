#include <cmath>
#include <vector>

#include "doctest.h"
#include "swe/cases/cases.hpp"
#include "swe/diag/norms.hpp"
#include "swe/diag/spectra.hpp"
#include "swe/mesh/geodesic.hpp"
#include "tests/test_support.hpp"

namespace geo = swe::geo;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Restrict an orthonormal harmonic to the cell centers.
std::vector<double> harmonic_field(const swe::Mesh& m, int l, int k) {
  std::vector<double> f(static_cast<std::size_t>(m.ncells()));
  std::vector<double> y;
  for (int i = 0; i < m.ncells(); ++i) {
    swe::eval_harmonics(m.xc[i], l, y);
    f[i] = y[static_cast<std::size_t>(l) * l + k];
  }
  return f;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("norm helpers") {
  const std::vector<double> f = {1.0, -3.0, 2.0};
  const std::vector<double> g = {1.0, -3.0, 2.5};
  const std::vector<double> w = {2.0, 1.0, 1.0};

  const double l2 = std::sqrt((2.0 * 1.0 + 9.0 + 4.0) / 4.0);
  CHECK(swe::area_l2(f, w) == doctest::Approx(l2).epsilon(1e-15));
  CHECK(swe::max_abs(f) == 3.0);

  const double rel = std::sqrt(0.25 / (2.0 + 9.0 + 6.25));
  CHECK(swe::area_rel_l2(f, g, w) == doctest::Approx(rel).epsilon(1e-14));
  CHECK(swe::area_rel_l2(f, f, w) == 0.0);
}

TEST_CASE("low degree harmonics match closed forms") {
  const geo::Vec3 p = geo::normalize({0.3, -0.5, 0.81});
  std::vector<double> y;
  swe::eval_harmonics(p, 2, y);

  const double c00 = 1.0 / std::sqrt(4.0 * kPi);
  CHECK(y[0] == doctest::Approx(c00).epsilon(1e-14));

  const double c1 = std::sqrt(3.0 / (4.0 * kPi));
  CHECK(y[1] == doctest::Approx(c1 * p.z).epsilon(1e-14));          // l=1 m=0
  CHECK(y[2] == doctest::Approx(c1 * p.x).epsilon(1e-14));          // l=1 m=1 cos
  CHECK(y[3] == doctest::Approx(c1 * p.y).epsilon(1e-14));          // l=1 m=1 sin

  const double c20 = std::sqrt(5.0 / (16.0 * kPi));
  CHECK(y[4] == doctest::Approx(c20 * (3.0 * p.z * p.z - 1.0)).epsilon(1e-13));
}

TEST_CASE("single harmonic concentrates its power") {
  const testsup::MeshPack& p = testsup::global_pack(3);
  for (const auto& [l, k] : {std::pair{3, 0}, {3, 4}, {5, 7}}) {
    const auto f = harmonic_field(p.mesh, l, k);
    const auto co = swe::analyze(p.mesh, f, 10);
    const double total = co.total_power();
    REQUIRE(total > 0.0);
    CHECK(co.degree_power(l) / total > 0.97);
    CHECK(co.at(l, k) == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("discrete parseval for a resolved field") {
  const testsup::MeshPack& p = testsup::global_pack(3);
  const swe::Mesh& m = p.mesh;

  std::vector<double> f(static_cast<std::size_t>(m.ncells()));
  for (int i = 0; i < m.ncells(); ++i) {
    const auto& x = m.xc[i];
    f[i] = 1.5 * x.z + 0.7 * x.x * x.y + 0.2 * (1.0 - 3.0 * x.z * x.z);
  }
  const int lmax = swe::default_lmax(m);
  const auto co = swe::analyze(m, f, lmax);

  double quad = 0.0, area = 0.0;
  const double a2 = testsup::kRadius * testsup::kRadius;
  for (int i = 0; i < m.ncells(); ++i) {
    quad += m.Ac[i] / a2 * f[i] * f[i];
    area += m.Ac[i];
  }
  CHECK(co.total_power() == doctest::Approx(quad).epsilon(0.02));
  CHECK(area == doctest::Approx(4.0 * kPi * a2).epsilon(1e-12));
}

TEST_CASE("default truncation tracks the spacing") {
  const testsup::MeshPack& p2 = testsup::global_pack(2);
  const testsup::MeshPack& p3 = testsup::global_pack(3);
  const int l2 = swe::default_lmax(p2.mesh);
  const int l3 = swe::default_lmax(p3.mesh);
  CHECK(l2 >= 10);
  CHECK(l3 > l2);
  CHECK(l3 <= 100);
}

TEST_CASE("zonal fields carry no eddy signal") {
  const testsup::MeshPack& p = testsup::global_pack(3);
  swe::RunConfig cfg;
  const auto fields = swe::init_case("swstc2", p.mesh, p.ops, cfg);
  const int lmax = swe::default_lmax(p.mesh);

  // The balanced zonal state: vorticity is a pure function of latitude.
  const double zon = swe::nonzonal_norm(p.mesh, fields.state.zeta, lmax);
  const auto co = swe::analyze(p.mesh, fields.state.zeta, lmax);
  CHECK(zon < 0.02 * std::sqrt(co.total_power()));

  const double eke = swe::eddy_kinetic_energy(p.mesh, fields.state.zeta, fields.state.gamma, lmax);
  double tke = 0.0;
  for (const auto& row : swe::energy_spectrum(p.mesh, fields.state.zeta, fields.state.gamma, lmax))
    tke += row.kinetic;
  CHECK(eke < 1e-3 * tke);

  // Breaking the symmetry shows up immediately.
  auto bumped = fields.state.zeta;
  for (int i = 0; i < p.mesh.ncells(); ++i)
    bumped[i] += 2e-6 * std::exp(-8.0 * geo::norm(p.mesh.xc[i] - geo::Vec3{1.0, 0.0, 0.0}));
  CHECK(swe::nonzonal_norm(p.mesh, bumped, lmax) > 10.0 * zon);
}

TEST_CASE("energy spectrum weights follow the inverse laplacian") {
  const testsup::MeshPack& p = testsup::global_pack(3);
  const swe::Mesh& m = p.mesh;
  // zeta = a Y_40: kinetic power at l=4 only, scaled by a^2 / (2 l (l+1)).
  const auto f = harmonic_field(m, 4, 0);
  const std::vector<double> zero(f.size(), 0.0);
  const auto rows = swe::energy_spectrum(m, f, zero, 10);
  REQUIRE(rows.size() == 10);

  double best_l = 0, best = 0.0, total = 0.0;
  for (const auto& r : rows) {
    total += r.kinetic;
    if (r.kinetic > best) best = r.kinetic, best_l = r.l;
  }
  CHECK(best_l == 4);
  CHECK(best / total > 0.95);

  const double a2 = testsup::kRadius * testsup::kRadius;
  CHECK(rows[3].l == 4);
  CHECK(rows[3].kinetic == doctest::Approx(a2 / 40.0).epsilon(0.05));
  CHECK(rows[3].enstrophy == doctest::Approx(0.5).epsilon(0.05));
}

}  // TEST_SUITE
