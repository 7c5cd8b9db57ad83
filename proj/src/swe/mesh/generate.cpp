#include "swe/mesh/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <utility>
#include <stdexcept>
#include <unordered_set>

#include "swe/mesh/triangulation.hpp"

namespace swe {

using geo::Vec3;

namespace {

// One Lloyd sweep: move each free generator to the spherical centroid of its
// Voronoi cell (the fan of incident triangle circumcenters, clipped to the
// domain side of any rim wall the cell touches). Returns the largest
// generator movement in radians.
double lloyd_sweep(std::vector<Vec3>& pts, const std::vector<std::array<int, 3>>& tris,
                   int first_free) {
  std::vector<Vec3> cc(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t)
    cc[t] = geo::circumcenter(pts[tris[t][0]], pts[tris[t][1]], pts[tris[t][2]]);

  // Fan order comes from hopping through the triangles: in a counterclockwise
  // triangle (i, x, y) the fan triangle with edge (i, y) follows the one with
  // edge (i, x). An angular sort would misorder the nearly flat fans a
  // relaxing rim can carry.
  const int nb = first_free;  // the fixed prefix is the boundary chain
  const auto dir_key = [](int i, int x) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(x);
  };
  std::unordered_map<std::uint64_t, std::pair<int, int>> after;  // (i,x) -> tri, y
  after.reserve(3 * tris.size());
  std::vector<int> seed(pts.size(), -1);
  for (int t = 0; t < static_cast<int>(tris.size()); ++t)
    for (int k = 0; k < 3; ++k) {
      const int i = tris[t][k], x = tris[t][(k + 1) % 3], y = tris[t][(k + 2) % 3];
      if (!after.emplace(dir_key(i, x), std::pair{t, y}).second)
        throw std::runtime_error("lloyd: folded triangulation");
      seed[i] = x;
    }

  const std::vector<Vec3> before = pts;
  std::vector<Vec3> poly, clipped;
  std::vector<std::pair<int, int>> walls;
  for (int i = first_free; i < static_cast<int>(pts.size()); ++i) {
    poly.clear();
    walls.clear();
    const int x0 = seed[i];
    int x = x0;
    do {
      const auto it = after.find(dir_key(i, x));
      if (it == after.end()) throw std::runtime_error("lloyd: generator with open fan");
      poly.push_back(cc[it->second.first]);
      const int y = it->second.second;
      if (x < nb && y < nb && y == (x + 1) % nb) walls.push_back({x, y});
      x = y;
    } while (x != x0 && poly.size() <= tris.size());
    if (x != x0) throw std::runtime_error("lloyd: generator fan does not close");
    if (poly.size() < 3) throw std::runtime_error("lloyd: generator with open fan");

    // A rim triangle sees its circumcenter fall outside the domain whenever
    // the rim edge subtends an obtuse angle at the generator; the unclipped
    // moment would then drag the generator through the rim. Keep only the
    // domain side of each touched rim wall.
    for (const auto& [r0, r1] : walls) {
      const Vec3 w = geo::normalize(geo::cross(pts[r0], pts[r1]));
      clipped.clear();
      const std::size_t n = poly.size();
      for (std::size_t k = 0; k < n; ++k) {
        const Vec3 p = poly[k], q = poly[(k + 1) % n];
        const double dp = geo::dot(p, w), dq = geo::dot(q, w);
        if (dp >= 0) clipped.push_back(p);
        if ((dp >= 0) != (dq >= 0))
          clipped.push_back(geo::normalize(p + (dp / (dp - dq)) * (q - p)));
      }
      poly.swap(clipped);
      if (poly.size() < 3) throw std::runtime_error("lloyd: cell clipped away");
    }

    const Vec3 mom = geo::polygon_moment(poly);
    if (geo::norm(mom) < 1e-14) throw std::runtime_error("lloyd: degenerate cell moment");
    pts[i] = geo::normalize(mom);
  }

  // Edge flips can only repair a triangulation that is still embedded. A big
  // move (early sweeps start from clustered random samples) can carry a
  // generator across an incident triangle; halve such moves until every
  // triangle is oriented outward again. Partial moves toward the centroid
  // still decrease the quantization energy, so convergence is unaffected.
  // Halving converges to the pre-sweep state, which was already accepted, so
  // a flat triangle whose free vertices are all back at their pre-sweep
  // positions is inherited, not newly inverted, and must be tolerated (it
  // gets flipped away once the layout around it relaxes).
  const auto volume_ratio = [&pts](const std::array<int, 3>& t) {
    const Vec3 a = pts[t[0]], b = pts[t[1]], c = pts[t[2]];
    const double scale =
        geo::norm(b - a) * geo::norm(c - a) * geo::norm(c - b) + 1e-300;
    return geo::triple(a, b, c) / scale;
  };
  std::vector<char> pull(pts.size());
  for (int guard = 0;; ++guard) {
    std::fill(pull.begin(), pull.end(), 0);
    bool bad = false;
    for (const auto& t : tris) {
      if (volume_ratio(t) >= -1e-14) continue;
      for (const int v : t)
        if (v >= first_free && geo::arc_angle(before[v], pts[v]) > 1e-15) {
          pull[v] = 1;
          bad = true;
        }
    }
    if (!bad) break;
    if (guard >= 60) throw std::runtime_error("lloyd: could not keep the surface embedded");
    for (int i = first_free; i < static_cast<int>(pts.size()); ++i)
      if (pull[i]) pts[i] = geo::arc_midpoint(before[i], pts[i]);
  }

  double moved = 0.0;
  for (int i = first_free; i < static_cast<int>(pts.size()); ++i)
    moved = std::max(moved, geo::arc_angle(before[i], pts[i]));
  return moved;
}

}  // namespace

Mesh generate_global_scvt(int level, int lloyd_iterations, double radius) {
  if (level < 0 || level > 8) throw std::invalid_argument("subdivision level out of range");
  Triangulation t = icosahedron_subdivide(level);
  const std::unordered_set<std::uint64_t> no_constraints;
  delaunay_flips(t.points, t.tris, no_constraints);
  for (int it = 0; it < lloyd_iterations; ++it) {
    const double moved = lloyd_sweep(t.points, t.tris, 0);
    delaunay_flips(t.points, t.tris, no_constraints);
    if (moved < 1e-10) break;
  }
  return build_mesh(std::move(t.points), std::move(t.tris), 0, radius);
}

Mesh generate_bounded_scvt(const std::vector<Vec3>& boundary, int interior_count,
                           int lloyd_iterations, std::uint64_t seed, double radius) {
  const int nb = static_cast<int>(boundary.size());
  if (nb < 3) throw std::invalid_argument("boundary polyline needs at least 3 points");
  if (interior_count < 1) throw std::invalid_argument("need at least one interior point");

  std::vector<Vec3> bnd(boundary);
  for (auto& p : bnd) p = geo::normalize(p);
  // The boundary must wind counterclockwise around the domain.
  if (geo::polygon_area(bnd) < 0) std::reverse(bnd.begin(), bnd.end());
  // Interior reference point: the first moment of the enclosed region. The
  // mean of the boundary points would cancel for a hemisphere-like rim.
  const Vec3 centroid = geo::normalize(geo::polygon_moment(bnd));

  // Sampling cap around the domain centroid.
  double cap_angle = 0.0;
  double mean_spacing = 0.0;
  for (int k = 0; k < nb; ++k) {
    cap_angle = std::max(cap_angle, geo::arc_angle(centroid, bnd[k]));
    mean_spacing += geo::arc_angle(bnd[k], bnd[(k + 1) % nb]);
  }
  mean_spacing /= nb;
  const double margin = 0.4 * mean_spacing;
  const Vec3 outside = -centroid;
  Vec3 ex, ey;
  geo::tangent_frame(centroid, ex, ey);

  std::mt19937_64 rng(seed);
  auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<Vec3> pts = bnd;
  pts.reserve(nb + interior_count);
  const double zmin = std::cos(std::min(cap_angle * 1.02 + 0.01, M_PI - 1e-3));
  // Keep fresh samples away from the rim and from each other; a clustered
  // start makes the first relaxation sweeps needlessly violent.
  const double separation =
      0.5 * std::sqrt(std::abs(geo::polygon_area(bnd)) / interior_count);
  long attempts = 0;
  while (static_cast<int>(pts.size()) < nb + interior_count) {
    if (++attempts > 2000L * (nb + interior_count))
      throw std::runtime_error("bounded mesh: rejection sampling stalled");
    const double z = zmin + (1.0 - zmin) * uniform();
    const double az = 2.0 * M_PI * uniform();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vec3 p = geo::normalize(z * centroid + (s * std::cos(az)) * ex +
                                  (s * std::sin(az)) * ey);
    bool clear = true;
    // Distance to the rim chain itself, not just its vertices: a sample in
    // the gap between two rim points but on their great circle would seed a
    // degenerate triangle that relaxation cannot repair.
    for (int k = 0; clear && k < nb; ++k)
      if (geo::arc_distance(p, bnd[k], bnd[(k + 1) % nb]) < margin) clear = false;
    for (int i = nb; clear && i < static_cast<int>(pts.size()); ++i)
      if (geo::arc_angle(p, pts[i]) < separation) clear = false;
    if (!clear) continue;
    if (!geo::point_in_polygon(bnd, p, outside)) continue;
    pts.push_back(p);
  }

  // Initial triangulation: convex hull with an auxiliary antipodal point.
  // Interior points are inserted before the boundary ring so every
  // orientation test during insertion is generic.
  std::vector<int> order;
  order.reserve(pts.size());
  for (int i = nb; i < static_cast<int>(pts.size()); ++i) order.push_back(i);
  for (int i = 0; i < nb; ++i) order.push_back(i);
  std::vector<std::array<int, 3>> tris = hull_cap_triangulation(pts, outside, order);

  std::unordered_set<std::uint64_t> rim;
  for (int k = 0; k < nb; ++k) rim.insert(edge_key(k, (k + 1) % nb));
  delaunay_flips(pts, tris, rim);

  for (int it = 0; it < lloyd_iterations; ++it) {
    const double moved = lloyd_sweep(pts, tris, nb);
    delaunay_flips(pts, tris, rim);
    if (moved < 1e-10) break;
  }
  return build_mesh(std::move(pts), std::move(tris), nb, radius);
}

std::vector<Vec3> hemisphere_polygon(int n) {
  if (n < 8) throw std::invalid_argument("hemisphere ring too small");
  std::vector<Vec3> poly(n);
  // A ring exactly on the equator would make every triple of ring points
  // coplanar with the origin, which degenerates the Delaunay structure (rim
  // ear triangles get an exactly zero orientation volume). A small constant
  // northward offset gives those triples a definite sign and keeps the ring
  // strictly convex, so ears along the rim stay honest interior triangles.
  const double lat = 1.5e-3;
  for (int j = 0; j < n; ++j)
    poly[j] = geo::from_latlon(lat, 2.0 * M_PI * j / n + 0.37);
  return poly;  // increasing longitude = counterclockwise around the north
}

std::vector<Vec3> gyre_polygon(int n) {
  if (n < 16) throw std::invalid_argument("gyre ring too small");
  // Oval at 2.6 units of the gyre's elliptic distance function, comfortably
  // outside the tanh rim of the initial streamfunction.
  const double theta_c = 0.5088, lambda_c = -1.1;
  const double dtheta = 0.08688, dlambda = 0.15;
  const double scale = 2.6;
  std::vector<Vec3> poly(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * M_PI * j / n + 0.1;
    poly[j] = geo::from_latlon(theta_c + scale * dtheta * std::sin(t),
                               lambda_c + scale * dlambda * std::cos(t));
  }
  return poly;
}

}  // namespace swe
