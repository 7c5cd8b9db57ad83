#include "swe/mesh/geodesic.hpp"

#include <algorithm>

namespace swe::geo {

double tri_area(Vec3 a, Vec3 b, Vec3 c) {
  // Spherical excess via the tangent half-angle form, which is stable for
  // the thin kite triangles the mesh layer produces.
  const double num = triple(a, b, c);
  const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(num, den);
}

double polygon_area(std::span<const Vec3> poly) {
  double area = 0.0;
  for (std::size_t k = 1; k + 1 < poly.size(); ++k)
    area += tri_area(poly[0], poly[k], poly[k + 1]);
  return area;
}

Vec3 polygon_moment(std::span<const Vec3> poly) {
  // Stokes: the integral of the position vector over a spherical region is
  // half the sum over boundary arcs of (arc angle) * (unit great-circle
  // normal). Valid for any simple polygon traversed counterclockwise.
  Vec3 m{};
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 p = poly[k];
    const Vec3 q = poly[(k + 1) % n];
    const Vec3 w = cross(p, q);
    const double wn = norm(w);
    if (wn < 1e-300) continue;
    const double theta = std::atan2(wn, dot(p, q));
    m = m + (0.5 * theta / wn) * w;
  }
  return m;
}

Vec3 circumcenter(Vec3 a, Vec3 b, Vec3 c) {
  Vec3 cc = normalize(cross(b - a, c - a));
  if (dot(cc, a + b + c) < 0) cc = -cc;
  return cc;
}

namespace {

// Is x on the minor arc from a to b (inclusive, with slack for roundoff)?
bool on_minor_arc(Vec3 a, Vec3 b, Vec3 x) {
  const double ab = arc_angle(a, b);
  return arc_angle(a, x) + arc_angle(x, b) <= ab + 1e-12;
}

}  // namespace

double arc_distance(Vec3 p, Vec3 a, Vec3 b) {
  const Vec3 w = cross(a, b);
  const double wn = norm(w);
  if (wn < 1e-300) return std::min(arc_angle(p, a), arc_angle(p, b));
  const Vec3 wu = (1.0 / wn) * w;
  const Vec3 foot = normalize(p - dot(p, wu) * wu);
  if (on_minor_arc(a, b, foot))
    return std::abs(std::asin(std::clamp(dot(p, wu), -1.0, 1.0)));
  return std::min(arc_angle(p, a), arc_angle(p, b));
}

bool arcs_cross(Vec3 a, Vec3 b, Vec3 c, Vec3 d) {
  const Vec3 n1 = cross(a, b);
  const Vec3 n2 = cross(c, d);
  const double s1 = dot(n1, c), s2 = dot(n1, d);
  const double s3 = dot(n2, a), s4 = dot(n2, b);
  if (s1 * s2 >= 0 || s3 * s4 >= 0) return false;
  // The great circles cross at +-i; the arcs intersect only if one of the
  // two candidates lies on both minor arcs.
  const Vec3 i = cross(n1, n2);
  if (norm(i) < 1e-300) return false;
  const Vec3 u = normalize(i);
  for (const Vec3 cand : {u, -u})
    if (on_minor_arc(a, b, cand) && on_minor_arc(c, d, cand)) return true;
  return false;
}

bool point_in_polygon(std::span<const Vec3> poly, Vec3 p, Vec3 outside) {
  int crossings = 0;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k)
    if (arcs_cross(p, outside, poly[k], poly[(k + 1) % n])) ++crossings;
  return (crossings % 2) == 1;
}

}  // namespace swe::geo
