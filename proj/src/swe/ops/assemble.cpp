#include "swe/ops/assemble.hpp"

namespace swe {

using geo::Vec3;

Operators build_operators(const Mesh& m) {
  Operators ops;
  const int nc = m.ncells(), ne = m.nedges(), nv = m.nverts();
  std::vector<Triplet> tg, ts, td, tc, tgh, tsh, tdh, tch, tn, tm, tah, tec, ted;

  for (int e = 0; e < ne; ++e) {
    const MeshEdge& ed = m.edges[e];
    // G: difference along the normal. The stored order (c0 < c1) fixes the
    // normal, so the entry signs follow directly from the pair order.
    tg.push_back({e, ed.c0, -1.0 / ed.d});
    tg.push_back({e, ed.c1, +1.0 / ed.d});
    // S: tangential component of the perp gradient. Derived geometrically:
    // the cell the normal points at gets the positive sign.
    const int toward = geo::dot(m.xc[ed.c1] - m.xc[ed.c0], ed.n) > 0 ? ed.c1 : ed.c0;
    const int away = toward == ed.c1 ? ed.c0 : ed.c1;
    ts.push_back({e, toward, +1.0 / ed.d});
    ts.push_back({e, away, -1.0 / ed.d});

    // Cell->edge arithmetic mean.
    tah.push_back({e, ed.c0, 0.5});
    tah.push_back({e, ed.c1, 0.5});

    for (const int cell : {ed.c0, ed.c1}) {
      // D: outward flux sum from the pair order.
      const double sgn = cell == ed.c0 ? 1.0 : -1.0;
      td.push_back({cell, e, sgn * ed.l / m.Ac[cell]});
      // C: circulation sum with the tangent sign measured geometrically
      // against the counterclockwise direction around the cell.
      const double ccw = geo::dot(ed.t, geo::cross(m.xc[cell], ed.m)) > 0 ? 1.0 : -1.0;
      tc.push_back({cell, e, ccw * ed.l / m.Ac[cell]});
      // Edge->cell quadrature weights l*d/4 (Hamiltonian form and the
      // normalized public remap).
      ted.push_back({cell, e, ed.l * ed.d / (4.0 * m.Ac[cell])});
    }

    if (ed.dual_active) {
      // Gh: tangential difference of a vertex field (v0 -> v1 along t).
      tgh.push_back({e, ed.v0, -1.0 / ed.l});
      tgh.push_back({e, ed.v1, +1.0 / ed.l});
      // Sh = -Gh, derived via the geometric vertex order against the tangent.
      const int ahead =
          geo::dot(m.xv[ed.v1] - m.xv[ed.v0], ed.t) > 0 ? ed.v1 : ed.v0;
      const int behind = ahead == ed.v1 ? ed.v0 : ed.v1;
      tsh.push_back({e, ahead, -1.0 / ed.l});
      tsh.push_back({e, behind, +1.0 / ed.l});

      for (const int vert : {ed.v0, ed.v1}) {
        // Dh: dual flux sum; the edge leaves its tangent start vertex.
        const double sigma = vert == ed.v0 ? 1.0 : -1.0;
        tdh.push_back({vert, e, sigma * ed.d / m.Av[vert]});
        // Ch = -Dh via the geometric test: positive when the tangent points
        // at the midpoint from the vertex side.
        const double geom =
            geo::dot(ed.t, ed.m - m.xv[vert]) > 0 ? 1.0 : -1.0;
        tch.push_back({vert, e, -geom * ed.d / m.Av[vert]});
      }
    }
  }

  for (int v = 0; v < nv; ++v)
    for (int k = 0; k < 3; ++k) {
      const int c = m.vert_cells[v][k];
      tn.push_back({v, c, m.kite[v][k] / m.Av[v]});
      tm.push_back({c, v, m.kite[v][k] / m.Ac[c]});
    }

  // Normalized edge->cell remap: same l*d/4 quadrature scaled to preserve
  // constants exactly.
  {
    std::vector<double> wsum(nc, 0.0);
    for (const auto& t : ted) wsum[t.row] += t.val;
    for (const auto& t : ted) tec.push_back({t.row, t.col, t.val / wsum[t.row]});
  }

  ops.G = csr_from_triplets(ne, nc, std::move(tg));
  ops.S = csr_from_triplets(ne, nc, std::move(ts));
  ops.D = csr_from_triplets(nc, ne, std::move(td));
  ops.C = csr_from_triplets(nc, ne, std::move(tc));
  ops.Gh = csr_from_triplets(ne, nv, std::move(tgh));
  ops.Sh = csr_from_triplets(ne, nv, std::move(tsh));
  ops.Dh = csr_from_triplets(nv, ne, std::move(tdh));
  ops.Ch = csr_from_triplets(nv, ne, std::move(tch));
  ops.N = csr_from_triplets(nv, nc, std::move(tn));
  ops.M = csr_from_triplets(nc, nv, std::move(tm));
  ops.Ahat = csr_from_triplets(ne, nc, std::move(tah));
  ops.Ecell = csr_from_triplets(nc, ne, std::move(tec));
  ops.Edyn = csr_from_triplets(nc, ne, std::move(ted));
  return ops;
}

}  // namespace swe
