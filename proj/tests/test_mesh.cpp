#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "swe/mesh/mesh.hpp"
#include "tests/test_support.hpp"

using swe::Mesh;
using swe::geo::Vec3;

namespace {

void check_edge_conventions(const Mesh& m) {
  for (int e = 0; e < m.nedges(); ++e) {
    const auto& ed = m.edges[e];
    CHECK(ed.c0 < ed.c1);
    // Normal points from c0 toward c1, tangent is midpoint cross normal.
    CHECK(swe::geo::dot(ed.n, m.xc[ed.c1] - m.xc[ed.c0]) > 0.0);
    const Vec3 t = swe::geo::cross(ed.m, ed.n);
    CHECK(swe::geo::norm(t - ed.t) < 1e-12);
    if (ed.dual_active) {
      CHECK(ed.v0 >= 0);
      CHECK(ed.v1 >= 0);
      CHECK(swe::geo::dot(ed.t, m.xv[ed.v1] - m.xv[ed.v0]) > 0.0);
    }
    CHECK(ed.l > 0.0);
    CHECK(ed.d > 0.0);
  }
}

void check_fans(const Mesh& m) {
  // Every interior edge shows up in exactly two cell fans, and consecutive
  // fan edges share exactly the vertex listed between them.
  std::vector<int> uses(m.nedges(), 0);
  for (int c = 0; c < m.ncells(); ++c) {
    const int ne = m.ce_off[c + 1] - m.ce_off[c];
    const int nv = m.cv_off[c + 1] - m.cv_off[c];
    CHECK(nv == (c < m.nb ? ne - 1 : ne));
    for (int j = 0; j < ne; ++j) {
      const int e = m.ce_edge[m.ce_off[c] + j];
      ++uses[e];
      const auto& ed = m.edges[e];
      CHECK((ed.c0 == c || ed.c1 == c));
    }
    for (int j = 0; j < nv; ++j) {
      const int e1 = m.ce_edge[m.ce_off[c] + j];
      const int e2 = m.ce_edge[m.ce_off[c] + (j + 1) % ne];
      const int v = m.cv_vert[m.cv_off[c] + j];
      const auto& a = m.edges[e1];
      const auto& b = m.edges[e2];
      CHECK((a.v0 == v || a.v1 == v));
      CHECK((b.v0 == v || b.v1 == v));
    }
  }
  for (int e = 0; e < m.nedges(); ++e) CHECK(uses[e] == 2);
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("global mesh counts and areas") {
  const Mesh& m = testsup::global_pack(2).mesh;
  CHECK(m.ncells() == 162);
  CHECK(m.nedges() == 480);
  CHECK(m.nverts() == 320);
  CHECK(m.nb == 0);
  CHECK(m.ncells() - m.nedges() + m.nverts() == 2);

  const double sphere = 4.0 * M_PI * testsup::kRadius * testsup::kRadius;
  double ac = 0.0, av = 0.0;
  for (double a : m.Ac) ac += a;
  for (double a : m.Av) av += a;
  CHECK(ac == doctest::Approx(sphere).epsilon(1e-12));
  CHECK(av == doctest::Approx(sphere).epsilon(1e-12));

  swe::validate_mesh(m);
  check_edge_conventions(m);
  check_fans(m);
}

TEST_CASE("kites tile both cell and vertex areas") {
  const Mesh& m = testsup::global_pack(2).mesh;
  std::vector<double> from_kites(m.ncells(), 0.0);
  for (int v = 0; v < m.nverts(); ++v) {
    double row = 0.0;
    for (int k = 0; k < 3; ++k) {
      row += m.kite[v][k];
      from_kites[m.vert_cells[v][k]] += m.kite[v][k];
    }
    CHECK(row == doctest::Approx(m.Av[v]).epsilon(1e-12));
  }
  for (int c = 0; c < m.ncells(); ++c)
    CHECK(from_kites[c] == doctest::Approx(m.Ac[c]).epsilon(1e-11));
}

TEST_CASE("bounded mesh boundary structure") {
  const Mesh& m = testsup::hemi_pack().mesh;
  CHECK(m.nb == 40);
  CHECK(m.ncells() == 320);
  CHECK(m.ncells() - m.nedges() + m.nverts() == 1);
  CHECK(static_cast<int>(m.rim_edge.size()) == m.nb);

  for (int k = 0; k < m.nb; ++k) {
    const auto& e = m.edges[m.rim_edge[k]];
    CHECK(e.boundary);
    CHECK(!e.dual_active);
    CHECK(e.v1 == -1);
    const int a = std::min(k, (k + 1) % m.nb), b = std::max(k, (k + 1) % m.nb);
    CHECK(e.c0 == a);
    CHECK(e.c1 == b);
  }

  // The boundary fan convention: first edge leads to the chain successor,
  // last edge to the predecessor.
  for (int c = 0; c < m.nb; ++c) {
    CHECK(m.ce_edge[m.ce_off[c]] == m.rim_edge[c]);
    CHECK(m.ce_edge[m.ce_off[c + 1] - 1] == m.rim_edge[(c - 1 + m.nb) % m.nb]);
  }

  swe::validate_mesh(m);
  check_edge_conventions(m);
  check_fans(m);

  // The polygon sits a hair north of the equator, so the domain is a whisker
  // under half the sphere.
  double ac = 0.0;
  for (double a : m.Ac) ac += a;
  const double half = 2.0 * M_PI * testsup::kRadius * testsup::kRadius;
  CHECK(ac < half);
  CHECK(ac > 0.98 * half);
}

TEST_CASE("mesh quality reports the rim as dual inactive") {
  const swe::MeshQuality qg = swe::mesh_quality(testsup::global_pack(2).mesh);
  CHECK(qg.dual_inactive == 0);
  CHECK(qg.ratio < 1.45);  // relaxed icosahedral meshes stay nearly uniform

  const swe::MeshQuality qh = swe::mesh_quality(testsup::hemi_pack().mesh);
  CHECK(qh.dual_inactive == testsup::hemi_pack().mesh.nb);
}

TEST_CASE("build rejects broken input") {
  using swe::geo::from_latlon;
  // A tetrahedron, wound counterclockwise seen from outside.
  std::vector<Vec3> pts = {
      swe::geo::normalize({1, 1, 1}),
      swe::geo::normalize({1, -1, -1}),
      swe::geo::normalize({-1, 1, -1}),
      swe::geo::normalize({-1, -1, 1}),
  };
  std::vector<std::array<int, 3>> tris = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  CHECK_NOTHROW(swe::build_mesh(pts, tris, 0, 1.0));

  auto flipped = tris;
  std::swap(flipped[0][0], flipped[0][1]);  // now wound clockwise
  CHECK_THROWS(swe::build_mesh(pts, flipped, 0, 1.0));

  auto off = pts;
  off[0] = 1.5 * off[0];
  CHECK_THROWS(swe::build_mesh(off, tris, 0, 1.0));

  auto dup = tris;
  dup[1] = dup[0];
  CHECK_THROWS(swe::build_mesh(pts, dup, 0, 1.0));
}

TEST_CASE("gyre basin mesh is well formed") {
  const Mesh& m = testsup::gyre_pack().mesh;
  CHECK(m.nb == 60);
  CHECK(m.ncells() == 460);
  CHECK(m.ncells() - m.nedges() + m.nverts() == 1);
  swe::validate_mesh(m);
  check_edge_conventions(m);
  check_fans(m);
}

}  // TEST_SUITE
