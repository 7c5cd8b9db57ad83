#pragma once
#include <array>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "swe/mesh/geodesic.hpp"

// Triangulations of point sets on the unit sphere. Global meshes start from
// a subdivided icosahedron whose combinatorics are known; bounded meshes get
// an initial triangulation from an incremental convex hull seeded with an
// auxiliary antipodal point. Both are kept Delaunay under point movement by
// Lawson edge flips.

namespace swe {

struct Triangulation {
  std::vector<geo::Vec3> points;            // unit vectors
  std::vector<std::array<int, 3>> tris;     // counterclockwise seen from outside
};

inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Subdivided icosahedron: 10*4^level + 2 points.
Triangulation icosahedron_subdivide(int level);

// Triangulation of a spherical cap region: the convex hull of pts plus the
// auxiliary point, with every face touching the auxiliary point removed.
// insertion_order lists indices into pts; points in generic position with
// respect to aux must come first (interior samples before boundary rings).
std::vector<std::array<int, 3>> hull_cap_triangulation(std::span<const geo::Vec3> pts,
                                                       geo::Vec3 aux,
                                                       std::span<const int> insertion_order);

// Restore the Delaunay property by Lawson flips. Edges present in
// `constrained` (edge_key form) are never flipped; edges bounding fewer than
// two triangles are skipped, so open cap triangulations are handled.
// Returns the number of flips applied.
int delaunay_flips(std::span<const geo::Vec3> pts, std::vector<std::array<int, 3>>& tris,
                   const std::unordered_set<std::uint64_t>& constrained);

}  // namespace swe
