#pragma once
#include "swe/mesh/mesh.hpp"
#include "swe/ops/sparse.hpp"

namespace swe {

// The letter operators. Naming: G/S map cells to edges (normal gradient and
// its perp, which coincide entrywise on these orthogonal meshes), D/C map
// edges to cells (flux divergence and circulation curl, also equal), and the
// h-suffixed variants act on the Delaunay dual through the edge set that has
// both vertices (dual_active). N and M are the area-weighted cell<->vertex
// remaps; Ecell/Edyn are the edge->cell quadratures (normalized and
// Hamiltonian-weighted respectively); Ahat is the cell->edge arithmetic mean.
//
// Equal-looking pairs are assembled from independent geometric sign
// computations on purpose: their equality is a real structure check, not a
// tautology.
struct Operators {
  Csr G, S;         // edges x cells
  Csr D, C;         // cells x edges
  Csr Gh, Sh;       // edges x vertices (zero rows off the dual-active set)
  Csr Dh, Ch;       // vertices x edges
  Csr N;            // vertices x cells
  Csr M;            // cells x vertices
  Csr Ahat;         // edges x cells, arithmetic mean
  Csr Ecell;        // cells x edges, constants-preserving quadrature remap
  Csr Edyn;         // cells x edges, l*d/(4A) weights (geopotential form)
};

Operators build_operators(const Mesh& m);

}  // namespace swe
