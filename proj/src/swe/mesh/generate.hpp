#pragma once
#include <cstdint>
#include <vector>

#include "swe/mesh/mesh.hpp"

namespace swe {

// Global quasi-uniform SCVT: subdivided icosahedron (10*4^level + 2 cells)
// relaxed by Lloyd iterations, with the Delaunay property maintained by edge
// flips as generators move.
Mesh generate_global_scvt(int level, int lloyd_iterations, double radius);

// Bounded SCVT on a simply connected spherical polygon. The boundary points
// are fixed generators forming the counterclockwise boundary chain; interior
// generators are seeded by rejection sampling and Lloyd-relaxed.
Mesh generate_bounded_scvt(const std::vector<geo::Vec3>& boundary,
                           int interior_count, int lloyd_iterations,
                           std::uint64_t seed, double radius);

// Boundary polygons for the shipped bounded domains, counterclockwise.
std::vector<geo::Vec3> hemisphere_polygon(int n);  // equator ring, interior = north
std::vector<geo::Vec3> gyre_polygon(int n);        // oval around the gyre basin

}  // namespace swe
