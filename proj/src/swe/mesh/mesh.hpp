#pragma once
#include <array>
#include <vector>

#include "swe/mesh/geodesic.hpp"

namespace swe {

// Voronoi cells host the prognostic fields, Delaunay triangles are the dual
// "vertices", and each edge is the wall between two cells. All positions are
// unit vectors; lengths and areas carry the sphere radius.

struct MeshEdge {
  int c0 = -1, c1 = -1;      // adjacent cells, c0 < c1; normal points c0 -> c1
  int v0 = -1, v1 = -1;      // endpoints ordered along the tangent; rim: v1 = -1
  double l = 0;              // Voronoi wall length (m)
  double d = 0;              // distance between the two cell generators (m)
  bool boundary = false;     // rim edge between consecutive boundary cells
  bool dual_active = false;  // participates in the vertex-based operators
  geo::Vec3 m, n, t;         // unit midpoint, unit normal, unit tangent (t = m x n)
};

struct Mesh {
  double radius = 1.0;
  int nb = 0;  // bounded meshes list their boundary cells first: ids [0, nb)

  std::vector<geo::Vec3> xc;  // cell generators
  std::vector<double> Ac;     // cell areas, assembled from signed kites
  std::vector<geo::Vec3> xv;  // vertex positions (triangle circumcenters)
  std::vector<double> Av;     // vertex areas (triangle areas, kite sums)
  std::vector<MeshEdge> edges;

  // Triangle connectivity: the three cells (min id first, counterclockwise)
  // and the three edges, where vert_edges[v][k] joins vert_cells[v][k] and
  // vert_cells[v][(k+1)%3].
  std::vector<std::array<int, 3>> vert_cells;
  std::vector<std::array<int, 3>> vert_edges;
  // kite[v][k]: signed area of the overlap of triangle v with the cell
  // vert_cells[v][k]. Rows sum to Av; per-cell sums give Ac.
  std::vector<std::array<double, 3>> kite;

  // Cell -> incident edges, counterclockwise; boundary cells start at the rim
  // edge toward the chain successor and end at the rim edge toward the
  // predecessor (the counterclockwise walk along the interior side of the
  // cell). cv lists the vertex between consecutive edges (one fewer entry
  // than edges for boundary cells, cyclic otherwise).
  std::vector<int> ce_off, ce_edge;
  std::vector<int> cv_off, cv_vert;

  // rim_edge[k] joins boundary cell k and boundary cell (k+1)%nb.
  std::vector<int> rim_edge;

  int ncells() const { return static_cast<int>(xc.size()); }
  int nedges() const { return static_cast<int>(edges.size()); }
  int nverts() const { return static_cast<int>(xv.size()); }
  bool bounded() const { return nb > 0; }

  // Flux sign of cell relative to the edge normal.
  int edge_sign(int e, int cell) const { return edges[e].c0 == cell ? +1 : -1; }
  // Sign of vertex relative to the edge tangent (start = +1).
  int vert_sign(int e, int vert) const { return edges[e].v0 == vert ? +1 : -1; }

  int cell_degree(int i) const { return ce_off[i + 1] - ce_off[i]; }
};

// Assemble a mesh from generators plus their Delaunay triangulation. For
// bounded meshes (nb > 0) the first nb generators must be the closed
// counterclockwise boundary chain; every consecutive pair must be joined by
// exactly one triangle. Generator coordinates are used exactly as given
// (they must be unit vectors), so saved meshes reload bit-exactly.
Mesh build_mesh(std::vector<geo::Vec3> points, std::vector<std::array<int, 3>> tris,
                int nb, double radius);

struct MeshQuality {
  double min_spacing = 0;
  double max_spacing = 0;
  double ratio = 0;
  int dual_inactive = 0;  // edges excluded from the vertex-based operators
};
MeshQuality mesh_quality(const Mesh& m);

// Structural and geometric invariants; throws std::runtime_error on failure.
void validate_mesh(const Mesh& m);

}  // namespace swe
