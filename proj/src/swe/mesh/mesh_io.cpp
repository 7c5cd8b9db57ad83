#include "swe/mesh/mesh_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace swe {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("mesh file: " + what);
}

class LineParser {
 public:
  explicit LineParser(const std::string& line) : s_(line), pos_(0) {}

  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  long next_int() {
    skip_ws();
    long v = 0;
    const auto r = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (r.ec != std::errc()) fail("expected integer in: " + s_);
    pos_ = static_cast<std::size_t>(r.ptr - s_.data());
    return v;
  }
  double next_double() {
    skip_ws();
    double v = 0;
    const auto r = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (r.ec != std::errc()) fail("expected number in: " + s_);
    pos_ = static_cast<std::size_t>(r.ptr - s_.data());
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  const std::string& s_;
  std::size_t pos_;
};

// Corruption guard, not a bitwise test: a file written by a different build
// may differ from the recomputation by rounding, and near-degenerate entities
// (short Voronoi walls, sliver kites) amplify that noise. The floor sets the
// absolute scale below which differences are meaningless for the quantity.
void check_close(double stored, double computed, double floor, const char* what) {
  const double scale = std::max({std::abs(stored), std::abs(computed), floor});
  if (std::abs(stored - computed) > 1e-11 * scale)
    fail(std::string("stored ") + what + " disagrees with recomputed geometry (" +
         format_double(stored) + " vs " + format_double(computed) + ")");
}

void check_point(const geo::Vec3& stored, const geo::Vec3& computed, const char* what) {
  if (geo::norm(stored - computed) > 1e-9)
    fail(std::string("stored ") + what + " disagrees with recomputed geometry");
}

}  // namespace

void save_mesh(const Mesh& m, const std::string& path) {
  std::ostringstream out;
  out << "[header]\n";
  out << "format_version 1\n";
  out << "radius " << format_double(m.radius) << "\n";
  out << "cells " << m.ncells() << "\n";
  out << "edges " << m.nedges() << "\n";
  out << "vertices " << m.nverts() << "\n";
  out << "boundary " << m.nb << "\n";

  out << "[cells]\n";
  for (int c = 0; c < m.ncells(); ++c) {
    out << format_double(m.xc[c].x) << ' ' << format_double(m.xc[c].y) << ' '
        << format_double(m.xc[c].z) << ' ' << format_double(m.Ac[c]);
    const int ne = m.ce_off[c + 1] - m.ce_off[c];
    const int nv = m.cv_off[c + 1] - m.cv_off[c];
    out << ' ' << ne;
    for (int j = 0; j < ne; ++j) out << ' ' << m.ce_edge[m.ce_off[c] + j];
    out << ' ' << nv;
    for (int j = 0; j < nv; ++j) out << ' ' << m.cv_vert[m.cv_off[c] + j];
    for (int j = 0; j < ne; ++j) {
      const MeshEdge& e = m.edges[m.ce_edge[m.ce_off[c] + j]];
      out << ' ' << (e.c0 == c ? e.c1 : e.c0);
    }
    out << ' ' << (c < m.nb ? 1 : 0) << "\n";
  }

  out << "[edges]\n";
  for (const auto& e : m.edges) {
    out << format_double(e.m.x) << ' ' << format_double(e.m.y) << ' ' << format_double(e.m.z)
        << ' ' << format_double(e.l) << ' ' << format_double(e.d) << ' ' << e.c0 << ' ' << e.c1
        << ' ' << e.v0 << ' ' << e.v1 << " 1 " << (e.boundary ? 1 : 0) << "\n";
  }

  out << "[vertices]\n";
  for (int v = 0; v < m.nverts(); ++v) {
    out << format_double(m.xv[v].x) << ' ' << format_double(m.xv[v].y) << ' '
        << format_double(m.xv[v].z) << ' ' << format_double(m.Av[v]);
    for (int k = 0; k < 3; ++k) out << ' ' << m.vert_cells[v][k];
    for (int k = 0; k < 3; ++k) out << ' ' << m.vert_edges[v][k];
    out << "\n";
  }

  out << "[boundary]\n";
  for (int k = 0; k < m.nb; ++k) out << k << "\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) fail("cannot open for writing: " + path);
  f << out.str();
  if (!f) fail("write failed: " + path);
}

Mesh load_mesh(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail("cannot open: " + path);

  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(f, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line() || line != "[header]") fail("missing [header]");
  double radius = 0;
  int ncells = -1, nedges = -1, nverts = -1, nb = -1, version = -1;
  while (next_line() && line[0] != '[') {
    std::istringstream is(line);
    std::string key;
    is >> key;
    if (key == "format_version")
      is >> version;
    else if (key == "radius")
      is >> radius;
    else if (key == "cells")
      is >> ncells;
    else if (key == "edges")
      is >> nedges;
    else if (key == "vertices")
      is >> nverts;
    else if (key == "boundary")
      is >> nb;
    else
      fail("unknown header key: " + key);
  }
  if (version != 1) fail("unsupported format_version");
  if (radius <= 0 || ncells < 3 || nedges < 3 || nverts < 1 || nb < 0)
    fail("bad header counts");

  if (line != "[cells]") fail("expected [cells]");
  struct CellRec {
    double area;
    std::vector<int> edges, verts, neighbors;
    int is_boundary;
  };
  std::vector<CellRec> cells(ncells);
  std::vector<geo::Vec3> points(ncells);
  for (int c = 0; c < ncells; ++c) {
    if (!next_line()) fail("truncated [cells]");
    LineParser p(line);
    CellRec& r = cells[c];
    points[c].x = p.next_double();
    points[c].y = p.next_double();
    points[c].z = p.next_double();
    r.area = p.next_double();
    const int ne = static_cast<int>(p.next_int());
    if (ne < 2 || ne > 64) fail("implausible cell degree");
    for (int j = 0; j < ne; ++j) r.edges.push_back(static_cast<int>(p.next_int()));
    const int nv = static_cast<int>(p.next_int());
    for (int j = 0; j < nv; ++j) r.verts.push_back(static_cast<int>(p.next_int()));
    for (int j = 0; j < ne; ++j) r.neighbors.push_back(static_cast<int>(p.next_int()));
    r.is_boundary = static_cast<int>(p.next_int());
    if (!p.done()) fail("trailing data in cell record");
  }

  if (!next_line() || line != "[edges]") fail("expected [edges]");
  struct EdgeRec {
    geo::Vec3 m;
    double l, d;
    int c0, c1, v0, v1, orient, is_boundary;
  };
  std::vector<EdgeRec> erecs(nedges);
  for (int e = 0; e < nedges; ++e) {
    if (!next_line()) fail("truncated [edges]");
    LineParser p(line);
    EdgeRec& r = erecs[e];
    r.m.x = p.next_double();
    r.m.y = p.next_double();
    r.m.z = p.next_double();
    r.l = p.next_double();
    r.d = p.next_double();
    r.c0 = static_cast<int>(p.next_int());
    r.c1 = static_cast<int>(p.next_int());
    r.v0 = static_cast<int>(p.next_int());
    r.v1 = static_cast<int>(p.next_int());
    r.orient = static_cast<int>(p.next_int());
    r.is_boundary = static_cast<int>(p.next_int());
    if (!p.done()) fail("trailing data in edge record");
    if (r.orient != 1) fail("unsupported edge orientation flag");
  }

  if (!next_line() || line != "[vertices]") fail("expected [vertices]");
  std::vector<std::array<int, 3>> tris(nverts);
  struct VertRec {
    geo::Vec3 x;
    double area;
    std::array<int, 3> edges;
  };
  std::vector<VertRec> vrecs(nverts);
  for (int v = 0; v < nverts; ++v) {
    if (!next_line()) fail("truncated [vertices]");
    LineParser p(line);
    vrecs[v].x.x = p.next_double();
    vrecs[v].x.y = p.next_double();
    vrecs[v].x.z = p.next_double();
    vrecs[v].area = p.next_double();
    for (int k = 0; k < 3; ++k) {
      const long c = p.next_int();
      if (c < 0 || c >= ncells) fail("vertex cell id out of range");
      tris[v][k] = static_cast<int>(c);
    }
    for (int k = 0; k < 3; ++k) vrecs[v].edges[k] = static_cast<int>(p.next_int());
    if (!p.done()) fail("trailing data in vertex record");
  }

  if (!next_line() || line != "[boundary]") fail("expected [boundary]");
  for (int k = 0; k < nb; ++k) {
    if (!next_line()) fail("truncated [boundary]");
    LineParser p(line);
    if (p.next_int() != k) fail("boundary chain must list cells 0..nb-1 in order");
  }

  // Rebuild everything from generators + triangles, then hold the stored
  // redundant fields against the recomputed ones.
  Mesh m = build_mesh(std::move(points), std::move(tris), nb, radius);
  if (m.nedges() != nedges) fail("edge count disagrees with connectivity");

  for (int e = 0; e < nedges; ++e) {
    const MeshEdge& me = m.edges[e];
    const EdgeRec& r = erecs[e];
    if (me.c0 != r.c0 || me.c1 != r.c1 || me.v0 != r.v0 || me.v1 != r.v1)
      fail("edge record disagrees with recomputed connectivity");
    if ((me.boundary ? 1 : 0) != r.is_boundary) fail("edge boundary flag mismatch");
    check_point(r.m, me.m, "edge midpoint");
    check_close(r.l, me.l, radius, "edge length");
    check_close(r.d, me.d, radius, "edge dual_length");
  }
  for (int c = 0; c < ncells; ++c) {
    const CellRec& r = cells[c];
    const int ne = m.ce_off[c + 1] - m.ce_off[c];
    const int nv = m.cv_off[c + 1] - m.cv_off[c];
    if (static_cast<int>(r.edges.size()) != ne || static_cast<int>(r.verts.size()) != nv)
      fail("cell degree mismatch");
    for (int j = 0; j < ne; ++j)
      if (r.edges[j] != m.ce_edge[m.ce_off[c] + j]) fail("cell edge list mismatch");
    for (int j = 0; j < nv; ++j)
      if (r.verts[j] != m.cv_vert[m.cv_off[c] + j]) fail("cell vertex list mismatch");
    for (int j = 0; j < ne; ++j) {
      const MeshEdge& e = m.edges[r.edges[j]];
      if (r.neighbors[j] != (e.c0 == c ? e.c1 : e.c0)) fail("cell neighbor list mismatch");
    }
    if (r.is_boundary != (c < nb ? 1 : 0)) fail("cell boundary flag mismatch");
    check_close(r.area, m.Ac[c], radius * radius, "cell area");
  }
  for (int v = 0; v < nverts; ++v) {
    check_point(vrecs[v].x, m.xv[v], "vertex position");
    check_close(vrecs[v].area, m.Av[v], radius * radius, "vertex area");
    for (int k = 0; k < 3; ++k)
      if (vrecs[v].edges[k] != m.vert_edges[v][k]) fail("vertex edge triplet mismatch");
  }

  // Once checked, the stored values win: a reloaded mesh must behave exactly
  // like the one that was saved, including the dual support flags, even if
  // this build rounds the recomputation differently than the writer did.
  for (int e = 0; e < nedges; ++e) {
    m.edges[e].l = erecs[e].l;
    m.edges[e].d = erecs[e].d;
    m.edges[e].dual_active = m.edges[e].v1 >= 0 && m.edges[e].l > 1e-12 * radius;
  }
  for (int c = 0; c < ncells; ++c) m.Ac[c] = cells[c].area;
  for (int v = 0; v < nverts; ++v) m.Av[v] = vrecs[v].area;

  validate_mesh(m);
  return m;
}

}  // namespace swe
