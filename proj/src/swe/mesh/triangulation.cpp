#include "swe/mesh/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace swe {

using geo::Vec3;

Triangulation icosahedron_subdivide(int level) {
  Triangulation t;
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  const double vv[12][3] = {{-1, p, 0}, {1, p, 0},  {-1, -p, 0}, {1, -p, 0},
                            {0, -1, p}, {0, 1, p},  {0, -1, -p}, {0, 1, -p},
                            {p, 0, -1}, {p, 0, 1},  {-p, 0, -1}, {-p, 0, 1}};
  for (auto& v : vv) t.points.push_back(geo::normalize({v[0], v[1], v[2]}));

  // Faces are the triples of mutually nearest vertices, oriented outward.
  const double edge_dot = geo::dot(t.points[0], t.points[1]);
  auto adjacent = [&](int a, int b) {
    return geo::dot(t.points[a], t.points[b]) > edge_dot - 1e-9;
  };
  for (int a = 0; a < 12; ++a)
    for (int b = a + 1; b < 12; ++b)
      for (int c = b + 1; c < 12; ++c)
        if (adjacent(a, b) && adjacent(b, c) && adjacent(a, c)) {
          if (geo::triple(t.points[a], t.points[b], t.points[c]) > 0)
            t.tris.push_back({a, b, c});
          else
            t.tris.push_back({a, c, b});
        }
  if (t.tris.size() != 20) throw std::logic_error("icosahedron face enumeration failed");

  for (int l = 0; l < level; ++l) {
    std::map<std::uint64_t, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = edge_key(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = static_cast<int>(t.points.size());
      t.points.push_back(geo::arc_midpoint(t.points[a], t.points[b]));
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(t.tris.size() * 4);
    for (const auto& tri : t.tris) {
      const int a = tri[0], b = tri[1], c = tri[2];
      const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      next.push_back({a, ab, ca});
      next.push_back({ab, b, bc});
      next.push_back({ca, bc, c});
      next.push_back({ab, bc, ca});
    }
    t.tris = std::move(next);
  }
  return t;
}

namespace {

struct HullFace {
  std::array<int, 3> v;
  bool alive = false;
};

class EdgeFaceMap {
 public:
  void add(int a, int b, int face) {
    auto& slot = map_[edge_key(a, b)];
    if (slot.first == -1)
      slot.first = face;
    else if (slot.second == -1)
      slot.second = face;
    else
      throw std::runtime_error("hull: edge shared by more than two faces");
  }
  void remove(int a, int b, int face) {
    auto it = map_.find(edge_key(a, b));
    if (it == map_.end()) throw std::runtime_error("hull: removing unknown edge");
    if (it->second.first == face)
      it->second.first = -1;
    else if (it->second.second == face)
      it->second.second = -1;
    else
      throw std::runtime_error("hull: face not on edge");
    if (it->second.first == -1 && it->second.second == -1) map_.erase(it);
  }
  int other(int a, int b, int face) const {
    auto it = map_.find(edge_key(a, b));
    if (it == map_.end()) return -1;
    if (it->second.first == face) return it->second.second;
    if (it->second.second == face) return it->second.first;
    return -1;
  }

 private:
  struct Pair {
    int first = -1;
    int second = -1;
  };
  std::unordered_map<std::uint64_t, Pair> map_;
};

}  // namespace

std::vector<std::array<int, 3>> hull_cap_triangulation(std::span<const Vec3> pts,
                                                       Vec3 aux,
                                                       std::span<const int> insertion_order) {
  const int n = static_cast<int>(pts.size());
  if (n < 3) throw std::invalid_argument("hull: need at least 3 points");
  const int aux_id = n;
  auto point = [&](int i) -> Vec3 { return i == aux_id ? aux : pts[i]; };

  // Initial tetrahedron: aux plus three early points chosen for volume.
  const int i0 = insertion_order[0];
  int i1 = -1, i2 = -1;
  double best = 0.0;
  const int probe = std::min<std::size_t>(insertion_order.size(), 64);
  for (int a = 1; a < probe; ++a) {
    const double d = geo::arc_angle(pts[i0], pts[insertion_order[a]]);
    if (d > best) {
      best = d;
      i1 = insertion_order[a];
    }
  }
  best = 0.0;
  for (int a = 1; a < probe; ++a) {
    const int cand = insertion_order[a];
    if (cand == i1) continue;
    const double vol = std::abs(
        geo::triple(pts[i1] - pts[i0], pts[cand] - pts[i0], aux - pts[i0]));
    if (vol > best) {
      best = vol;
      i2 = cand;
    }
  }
  if (i1 < 0 || i2 < 0 || best < 1e-9)
    throw std::runtime_error("hull: degenerate initial tetrahedron");

  std::vector<HullFace> faces;
  EdgeFaceMap edges;
  auto add_face = [&](int a, int b, int c) {
    const int id = static_cast<int>(faces.size());
    faces.push_back({{a, b, c}, true});
    edges.add(a, b, id);
    edges.add(b, c, id);
    edges.add(c, a, id);
    return id;
  };
  auto remove_face = [&](int id) {
    auto& f = faces[id];
    edges.remove(f.v[0], f.v[1], id);
    edges.remove(f.v[1], f.v[2], id);
    edges.remove(f.v[2], f.v[0], id);
    f.alive = false;
  };

  {
    const Vec3 g = 0.25 * (pts[i0] + pts[i1] + pts[i2] + aux);
    auto oriented = [&](int a, int b, int c) {
      if (geo::triple(point(b) - point(a), point(c) - point(a), point(a) - g) > 0)
        add_face(a, b, c);
      else
        add_face(a, c, b);
    };
    oriented(i0, i1, i2);
    oriented(i0, i1, aux_id);
    oriented(i0, i2, aux_id);
    oriented(i1, i2, aux_id);
  }

  std::vector<char> used(n, 0);
  used[i0] = used[i1] = used[i2] = 1;
  std::vector<int> visible;
  for (const int p : insertion_order) {
    if (used[p]) continue;
    used[p] = 1;
    const Vec3 x = pts[p];
    visible.clear();
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      if (!faces[f].alive) continue;
      const Vec3 a = point(faces[f].v[0]);
      const Vec3 nrm = geo::cross(point(faces[f].v[1]) - a, point(faces[f].v[2]) - a);
      if (geo::dot(nrm, x - a) > 1e-13) visible.push_back(f);
    }
    if (visible.empty())
      throw std::runtime_error("hull: point sees no face (degenerate input)");
    // Horizon edges keep the orientation they have inside the visible face.
    std::vector<std::array<int, 2>> horizon;
    for (const int f : visible) {
      const auto& v = faces[f].v;
      for (int k = 0; k < 3; ++k) {
        const int a = v[k], b = v[(k + 1) % 3];
        const int nb = edges.other(a, b, f);
        const bool nb_visible =
            nb >= 0 && std::find(visible.begin(), visible.end(), nb) != visible.end();
        if (!nb_visible) horizon.push_back({a, b});
      }
    }
    for (const int f : visible) remove_face(f);
    for (const auto& e : horizon) add_face(e[0], e[1], p);
  }

  std::vector<std::array<int, 3>> out;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    if (f.v[0] == aux_id || f.v[1] == aux_id || f.v[2] == aux_id) continue;
    out.push_back(f.v);
  }
  return out;
}

int delaunay_flips(std::span<const Vec3> pts, std::vector<std::array<int, 3>>& tris,
                   const std::unordered_set<std::uint64_t>& constrained) {
  // edge -> (tri, tri) incidence, rebuilt once and maintained through flips.
  std::unordered_map<std::uint64_t, std::pair<int, int>> inc;
  inc.reserve(tris.size() * 2);
  auto attach = [&](int a, int b, int t) {
    auto [it, fresh] = inc.try_emplace(edge_key(a, b), std::make_pair(t, -1));
    if (!fresh) {
      if (it->second.second != -1)
        throw std::runtime_error("flips: edge shared by more than two triangles");
      it->second.second = t;
    }
  };
  auto detach = [&](int a, int b, int t) {
    auto it = inc.find(edge_key(a, b));
    if (it->second.first == t)
      it->second.first = it->second.second;
    it->second.second = -1;
    if (it->second.first == -1) inc.erase(it);
  };
  for (int t = 0; t < static_cast<int>(tris.size()); ++t)
    for (int k = 0; k < 3; ++k) attach(tris[t][k], tris[t][(k + 1) % 3], t);

  std::deque<std::uint64_t> queue;
  std::unordered_set<std::uint64_t> queued;
  auto push = [&](int a, int b) {
    const auto key = edge_key(a, b);
    if (constrained.count(key)) return;
    if (queued.insert(key).second) queue.push_back(key);
  };
  for (const auto& [key, faces] : inc) {
    (void)faces;
    if (!constrained.count(key)) {
      queued.insert(key);
      queue.push_back(key);
    }
  }

  auto third = [&](int t, int a, int b) {
    for (int v : tris[t])
      if (v != a && v != b) return v;
    throw std::logic_error("flips: degenerate triangle");
  };

  int flips = 0;
  const long max_flips = 40L * static_cast<long>(inc.size()) + 1000;
  while (!queue.empty()) {
    const auto key = queue.front();
    queue.pop_front();
    queued.erase(key);
    auto it = inc.find(key);
    if (it == inc.end()) continue;
    const auto [t1, t2] = it->second;
    if (t1 < 0 || t2 < 0) continue;
    const int u = static_cast<int>(key >> 32);
    const int v = static_cast<int>(key & 0xffffffffu);
    const int a = third(t1, u, v);
    const int b = third(t2, u, v);
    // Local convexity test: flip when the opposite point lies strictly above
    // the plane of the neighboring triangle. Points on a sphere are in convex
    // position, so this is exactly the Delaunay (in-circumcircle) criterion.
    const Vec3 pu = pts[u], pv = pts[v];
    // Orient the shared edge as t1 sees it, so both new faces come out
    // counterclockwise.
    auto w1 = tris[t1];
    while (w1[2] != a) std::rotate(w1.begin(), w1.begin() + 1, w1.end());
    const int p = w1[0], q = w1[1];
    const Vec3 nrm = geo::cross(pts[q] - pts[p], pts[a] - pts[p]);
    const double value = geo::dot(nrm, pts[b] - pts[p]);
    const double scale = geo::norm(nrm) * geo::norm(pts[b] - pts[p]) + 1e-300;
    (void)pu;
    (void)pv;
    if (value <= 1e-14 * scale) continue;
    // Mid-relaxation the quad around an edge can be non-convex even when the
    // circumcircle test fails; flipping such a quad folds the surface. Only
    // flip when both replacement triangles are clearly oriented outward.
    const auto positive = [&](int x, int y, int z) {
      const Vec3 px = pts[x], py = pts[y], pz = pts[z];
      const double s =
          geo::norm(py - px) * geo::norm(pz - px) * geo::norm(pz - py) + 1e-300;
      return geo::triple(px, py, pz) > 1e-14 * s;
    };
    if (!positive(a, p, b) || !positive(b, q, a)) continue;
    if (++flips > max_flips) throw std::runtime_error("flips: not terminating");

    for (const int t : {t1, t2})
      for (int k = 0; k < 3; ++k) detach(tris[t][k], tris[t][(k + 1) % 3], t);
    tris[t1] = {a, p, b};
    tris[t2] = {b, q, a};
    for (const int t : {t1, t2})
      for (int k = 0; k < 3; ++k) attach(tris[t][k], tris[t][(k + 1) % 3], t);

    push(q, a);
    push(a, p);
    push(p, b);
    push(b, q);
  }
  return flips;
}

}  // namespace swe
