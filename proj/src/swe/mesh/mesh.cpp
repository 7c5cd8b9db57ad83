#include "swe/mesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>

#include "swe/mesh/triangulation.hpp"

namespace swe {

using geo::Vec3;

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("mesh: " + what); }

std::array<int, 3> canonical_tri(std::array<int, 3> t) {
  // Smallest cell id first. The cyclic order is kept as given: triangles
  // must arrive counterclockwise seen from outside, and for a nearly flat
  // triangle the sign of its own volume is rounding noise, so orientation
  // can only be trusted combinatorially, not recomputed.
  while (!(t[0] < t[1] && t[0] < t[2])) std::rotate(t.begin(), t.begin() + 1, t.end());
  return t;
}

}  // namespace

Mesh build_mesh(std::vector<Vec3> points, std::vector<std::array<int, 3>> tris,
                int nb, double radius) {
  Mesh m;
  m.radius = radius;
  m.nb = nb;
  const int nc = static_cast<int>(points.size());
  const int nv = static_cast<int>(tris.size());
  if (nb < 0 || nb == 1 || nb == 2 || nb > nc) fail("invalid boundary cell count");

  // Generators are taken bit for bit: the text format stores their components
  // exactly, so a reload rebuilds identical geometry. Renormalizing here would
  // perturb the bits and break that round trip.
  for (const Vec3& p : points)
    if (std::abs(geo::dot(p, p) - 1.0) > 1e-12) fail("generator not on the unit sphere");
  m.xc = std::move(points);

  // Canonical triangle order gives deterministic vertex ids.
  for (auto& t : tris) {
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) fail("degenerate triangle");
    const Vec3 a = m.xc[t[0]], b = m.xc[t[1]], c = m.xc[t[2]];
    const double scale = geo::norm(b - a) * geo::norm(c - a) * geo::norm(c - b);
    if (geo::triple(a, b, c) < -1e-12 * scale) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e", geo::triple(a, b, c) / scale);
      fail(std::string("triangle wound clockwise (ratio ") + buf + ")");
    }
    t = canonical_tri(t);
  }
  std::sort(tris.begin(), tris.end());
  if (std::adjacent_find(tris.begin(), tris.end()) != tris.end()) fail("duplicate triangle");
  m.vert_cells = std::move(tris);

  // Edges: sorted cell pairs, with their incident triangles.
  std::map<std::pair<int, int>, std::array<int, 2>> edge_map;
  for (int v = 0; v < nv; ++v)
    for (int k = 0; k < 3; ++k) {
      int a = m.vert_cells[v][k], b = m.vert_cells[v][(k + 1) % 3];
      if (a > b) std::swap(a, b);
      auto [it, fresh] = edge_map.try_emplace({a, b}, std::array<int, 2>{v, -1});
      if (!fresh) {
        if (it->second[1] != -1) fail("edge shared by more than two triangles");
        it->second[1] = v;
      }
    }

  m.edges.reserve(edge_map.size());
  std::map<std::pair<int, int>, int> edge_id;
  for (const auto& [cells, vs] : edge_map) {
    MeshEdge e;
    e.c0 = cells.first;
    e.c1 = cells.second;
    e.v0 = vs[0];
    e.v1 = vs[1];
    edge_id[cells] = static_cast<int>(m.edges.size());
    m.edges.push_back(e);
  }

  // Boundary chain: consecutive boundary generators are joined by rim edges
  // carried by exactly one triangle each.
  m.rim_edge.resize(nb >= 3 ? nb : 0);
  if (nb >= 3) {
    for (int k = 0; k < nb; ++k) {
      int a = k, b = (k + 1) % nb;
      if (a > b) std::swap(a, b);
      auto it = edge_id.find({a, b});
      if (it == edge_id.end()) fail("boundary chain pair not adjacent");
      MeshEdge& e = m.edges[it->second];
      if (e.v1 != -1) fail("rim edge has two triangles");
      e.boundary = true;
      m.rim_edge[k] = it->second;
    }
  }
  for (const auto& e : m.edges)
    if (e.v1 == -1 && !e.boundary) fail("interior edge with a single triangle");

  // vert_edges aligned with vert_cells.
  m.vert_edges.resize(nv);
  for (int v = 0; v < nv; ++v)
    for (int k = 0; k < 3; ++k) {
      int a = m.vert_cells[v][k], b = m.vert_cells[v][(k + 1) % 3];
      if (a > b) std::swap(a, b);
      m.vert_edges[v][k] = edge_id.at({a, b});
    }

  // Vertex positions: circumcenters on the triangle's side of the sphere.
  m.xv.resize(nv);
  for (int v = 0; v < nv; ++v) {
    const auto& t = m.vert_cells[v];
    m.xv[v] = geo::circumcenter(m.xc[t[0]], m.xc[t[1]], m.xc[t[2]]);
  }

  // Edge geometry. Orientation convention: normal from c0 toward c1 along
  // their great circle, tangent t = m x n, vertex order v0 -> v1 along t.
  for (auto& e : m.edges) {
    const Vec3 a = m.xc[e.c0], b = m.xc[e.c1];
    e.m = geo::arc_midpoint(a, b);
    const Vec3 w = geo::normalize(geo::cross(a, b));
    e.n = geo::normalize(geo::cross(w, e.m));
    e.t = geo::cross(e.m, e.n);
    e.d = geo::arc_angle(a, b) * radius;
    if (e.v1 >= 0) {
      if (geo::dot(m.xv[e.v1] - m.xv[e.v0], e.t) < 0) std::swap(e.v0, e.v1);
      e.l = geo::arc_angle(m.xv[e.v0], m.xv[e.v1]) * radius;
    } else {
      e.l = geo::arc_angle(m.xv[e.v0], e.m) * radius;
    }
    e.dual_active = e.v1 >= 0 && e.l > 1e-12 * radius;
  }

  // Cell -> edge lists, counterclockwise. In a counterclockwise triangle
  // (c, x, y) the edge toward y follows the edge toward x around c, so the
  // fan order comes from hopping through the triangles; an angular sort
  // would misorder the nearly flat triangles a relaxed rim can carry.
  std::map<std::pair<int, int>, int> ccw_next;
  for (int v = 0; v < nv; ++v) {
    const auto& t = m.vert_cells[v];
    for (int k = 0; k < 3; ++k)
      if (!ccw_next.emplace(std::pair{t[k], t[(k + 1) % 3]}, t[(k + 2) % 3]).second)
        fail("directed cell pair shared by two triangles");
  }
  std::vector<int> degree(nc, 0);
  std::vector<int> some_neighbor(nc, -1);
  for (const auto& e : m.edges) {
    ++degree[e.c0], ++degree[e.c1];
    some_neighbor[e.c0] = e.c1;
    some_neighbor[e.c1] = e.c0;
  }
  m.ce_off.assign(nc + 1, 0);
  m.cv_off.assign(nc + 1, 0);
  for (int c = 0; c < nc; ++c) {
    // Boundary fans open at the successor rim wall and close at the
    // predecessor one (the rim cut itself carries no interior triangle);
    // interior fans are cyclic and may start anywhere.
    const int x0 = c < nb ? (c + 1) % nb : some_neighbor[c];
    int x = x0, emitted = 0;
    while (true) {
      int a = c, b = x;
      if (a > b) std::swap(a, b);
      m.ce_edge.push_back(edge_id.at({a, b}));
      if (++emitted > degree[c]) fail("cell edge fan does not close");
      const auto it = ccw_next.find({c, x});
      if (it == ccw_next.end()) {
        if (c >= nb) fail("interior cell with an open edge fan");
        if (m.ce_edge.back() != m.rim_edge[(c - 1 + nb) % nb])
          fail("boundary cell fan does not end at the predecessor rim edge");
        break;
      }
      x = it->second;
      if (c < nb && x == x0) fail("boundary cell fan wrapped around the rim cut");
      if (c >= nb && x == x0) break;
    }
    if (emitted != degree[c]) fail("cell edge fan misses an incident edge");
    m.ce_off[c + 1] = m.ce_off[c] + emitted;
  }

  // Cell -> vertex lists: the triangle shared by each consecutive edge pair.
  auto shared_vertex = [&](int c, int e1, int e2) {
    const MeshEdge& a = m.edges[e1];
    const MeshEdge& b = m.edges[e2];
    for (const int v : {a.v0, a.v1}) {
      if (v < 0) continue;
      if (v == b.v0 || v == b.v1) {
        const auto& tc = m.vert_cells[v];
        if (tc[0] == c || tc[1] == c || tc[2] == c) return v;
      }
    }
    fail("consecutive cell edges share no triangle (cell " + std::to_string(c) + ")");
  };
  for (int c = 0; c < nc; ++c) {
    const int ne = m.ce_off[c + 1] - m.ce_off[c];
    const int nvc = c < nb ? ne - 1 : ne;
    if (ne < (c < nb ? 2 : 3)) fail("cell with too few edges");
    for (int j = 0; j < nvc; ++j) {
      const int e1 = m.ce_edge[m.ce_off[c] + j];
      const int e2 = m.ce_edge[m.ce_off[c] + (j + 1) % ne];
      m.cv_vert.push_back(shared_vertex(c, e1, e2));
    }
    m.cv_off[c + 1] = m.cv_off[c] + nvc;
  }

  // Kites: overlap of each cell with each incident triangle, traversed
  // counterclockwise as (generator, edge midpoint, circumcenter, next edge
  // midpoint). Signed, so obtuse triangles stay consistent; the same numbers
  // accumulate both the cell areas and the vertex areas.
  m.kite.assign(nv, {0.0, 0.0, 0.0});
  m.Ac.assign(nc, 0.0);
  m.Av.assign(nv, 0.0);
  const double r2 = radius * radius;
  for (int c = 0; c < nc; ++c) {
    const int ne = m.ce_off[c + 1] - m.ce_off[c];
    const int nvc = m.cv_off[c + 1] - m.cv_off[c];
    for (int j = 0; j < nvc; ++j) {
      const int e1 = m.ce_edge[m.ce_off[c] + j];
      const int e2 = m.ce_edge[m.ce_off[c] + (j + 1) % ne];
      const int v = m.cv_vert[m.cv_off[c] + j];
      const Vec3 quad[4] = {m.xc[c], m.edges[e1].m, m.xv[v], m.edges[e2].m};
      const double area = geo::polygon_area(quad) * r2;
      m.Ac[c] += area;
      const auto& tc = m.vert_cells[v];
      for (int k = 0; k < 3; ++k)
        if (tc[k] == c) m.kite[v][k] = area;
      m.Av[v] += area;
    }
  }

  return m;
}

MeshQuality mesh_quality(const Mesh& m) {
  MeshQuality q;
  q.min_spacing = 1e300;
  for (const auto& e : m.edges) {
    q.min_spacing = std::min(q.min_spacing, e.d);
    q.max_spacing = std::max(q.max_spacing, e.d);
    if (e.v1 >= 0 && !e.dual_active) ++q.dual_inactive;
  }
  q.ratio = q.max_spacing / q.min_spacing;
  return q;
}

void validate_mesh(const Mesh& m) {
  const int nc = m.ncells(), ne = m.nedges(), nv = m.nverts();
  const int euler = nc - ne + nv;
  if (m.bounded() ? euler != 1 : euler != 2) fail("Euler characteristic violated");

  for (const auto& e : m.edges) {
    if (!(e.c0 >= 0 && e.c0 < e.c1 && e.c1 < nc)) fail("bad edge cell pair");
    if (e.d <= 0) fail("nonpositive cell spacing");
    if (e.l < 0) fail("negative edge length");
    if (e.boundary) {
      if (e.v1 != -1) fail("rim edge with two vertices");
      if (e.c0 >= m.nb || e.c1 >= m.nb) fail("rim edge on non-boundary cell");
    } else if (e.v1 < 0 || e.v0 < 0 || e.v0 >= nv || e.v1 >= nv) {
      fail("interior edge vertices out of range");
    }
    if (e.dual_active && geo::dot(m.xv[e.v1] - m.xv[e.v0], e.t) <= 0)
      fail("edge vertex order against tangent");
  }

  double sum_ac = 0.0, sum_av = 0.0;
  for (int c = 0; c < nc; ++c) {
    if (m.Ac[c] <= 0) fail("nonpositive cell area");
    sum_ac += m.Ac[c];
  }
  for (int v = 0; v < nv; ++v) {
    if (m.Av[v] <= 0) fail("nonpositive vertex area");
    sum_av += m.Av[v];
    double s = m.kite[v][0] + m.kite[v][1] + m.kite[v][2];
    if (std::abs(s - m.Av[v]) > 1e-12 * m.Av[v] + 1e-300)
      fail("kites do not sum to the vertex area");
    // Kite sums must equal the direct triangle area.
    const auto& t = m.vert_cells[v];
    const double tri = geo::tri_area(m.xc[t[0]], m.xc[t[1]], m.xc[t[2]]) *
                       m.radius * m.radius;
    if (std::abs(tri - m.Av[v]) > 1e-9 * (std::abs(tri) + m.Av[v]))
      fail("vertex area disagrees with triangle area");
  }
  if (std::abs(sum_ac - sum_av) > 1e-11 * sum_ac)
    fail("cell and vertex areas tile differently");
  if (!m.bounded()) {
    const double sphere = 4.0 * M_PI * m.radius * m.radius;
    if (std::abs(sum_ac - sphere) > 1e-10 * sphere)
      fail("global mesh area does not tile the sphere");
  } else {
    std::vector<Vec3> poly(m.xc.begin(), m.xc.begin() + m.nb);
    const double domain = geo::polygon_area(poly) * m.radius * m.radius;
    if (std::abs(sum_ac - domain) > 1e-10 * domain)
      fail("bounded mesh area does not tile the domain polygon");
  }
}

}  // namespace swe
