#pragma once
#include <cmath>
#include <span>

// Unit-sphere geometry: vectors, arcs, spherical areas, circumcenters and
// polygon integrals. Everything here works on unit vectors; radius scaling
// is applied by the mesh layer.

namespace swe::geo {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalize(Vec3 a) {
  const double n = norm(a);
  return {a.x / n, a.y / n, a.z / n};
}
// det[a b c]; positive when (a,b,c) is a right-handed triple.
inline double triple(Vec3 a, Vec3 b, Vec3 c) { return dot(cross(a, b), c); }

inline Vec3 from_latlon(double lat, double lon) {
  const double c = std::cos(lat);
  return {c * std::cos(lon), c * std::sin(lon), std::sin(lat)};
}
inline double lat_of(Vec3 p) { return std::atan2(p.z, std::hypot(p.x, p.y)); }
inline double lon_of(Vec3 p) { return std::atan2(p.y, p.x); }

// Local east/north tangent unit vectors (undefined at the poles).
inline Vec3 east_at(Vec3 p) { return normalize(Vec3{-p.y, p.x, 0}); }
inline Vec3 north_at(Vec3 p) { return cross(p, east_at(p)); }

// An orthonormal tangent pair at p that is well defined for every direction,
// poles included. Use this for angular sorting; east/north only for fields
// expressed in longitude and latitude.
inline void tangent_frame(Vec3 p, Vec3& e1, Vec3& e2) {
  const Vec3 h = std::abs(p.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
  e1 = normalize(cross(h, p));
  e2 = cross(p, e1);
}

// Central angle between unit vectors, accurate for both small and near-pi
// separations (the acos formulation loses digits at both ends).
inline double arc_angle(Vec3 a, Vec3 b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

// Angular distance from p to the minor arc between a and b.
double arc_distance(Vec3 p, Vec3 a, Vec3 b);

inline Vec3 arc_midpoint(Vec3 a, Vec3 b) { return normalize(a + b); }

// Signed spherical excess of the triangle (a,b,c); positive for a triangle
// that winds counterclockwise seen from outside the sphere.
double tri_area(Vec3 a, Vec3 b, Vec3 c);

// Signed area of a spherical polygon given by its vertex loop.
double polygon_area(std::span<const Vec3> poly);

// The unnormalized first moment of a spherical polygon: integral of the
// position vector over the enclosed region. Normalizing it gives the
// spherical centroid used by Lloyd iteration.
Vec3 polygon_moment(std::span<const Vec3> poly);

// Circumcenter of a spherical triangle, on the same side as the triangle.
Vec3 circumcenter(Vec3 a, Vec3 b, Vec3 c);

// Proper crossing of minor arcs ab and cd.
bool arcs_cross(Vec3 a, Vec3 b, Vec3 c, Vec3 d);

// Odd/even crossing test along the arc p -> outside, where outside is a
// point known to be exterior to the polygon.
bool point_in_polygon(std::span<const Vec3> poly, Vec3 p, Vec3 outside);

}  // namespace swe::geo
