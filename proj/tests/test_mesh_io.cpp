#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "swe/mesh/mesh_io.hpp"
#include "tests/test_support.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "swe_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void check_roundtrip(const swe::Mesh& m, const std::string& tag) {
  const fs::path p1 = temp_file(tag + "_1.mesh");
  const fs::path p2 = temp_file(tag + "_2.mesh");
  swe::save_mesh(m, p1.string());
  const swe::Mesh r = swe::load_mesh(p1.string());
  swe::save_mesh(r, p2.string());

  // The text format is a fixed point of save/load: same bytes, same bits.
  CHECK(slurp(p1) == slurp(p2));

  REQUIRE(r.ncells() == m.ncells());
  REQUIRE(r.nedges() == m.nedges());
  REQUIRE(r.nverts() == m.nverts());
  CHECK(r.nb == m.nb);
  for (int c = 0; c < m.ncells(); ++c) {
    CHECK(same_bits(r.xc[c].x, m.xc[c].x));
    CHECK(same_bits(r.xc[c].y, m.xc[c].y));
    CHECK(same_bits(r.xc[c].z, m.xc[c].z));
    CHECK(same_bits(r.Ac[c], m.Ac[c]));
  }
  for (int e = 0; e < m.nedges(); ++e) {
    CHECK(same_bits(r.edges[e].l, m.edges[e].l));
    CHECK(same_bits(r.edges[e].d, m.edges[e].d));
    CHECK(r.edges[e].c0 == m.edges[e].c0);
    CHECK(r.edges[e].c1 == m.edges[e].c1);
    CHECK(r.edges[e].v0 == m.edges[e].v0);
    CHECK(r.edges[e].v1 == m.edges[e].v1);
    CHECK(r.edges[e].dual_active == m.edges[e].dual_active);
    CHECK(r.edges[e].boundary == m.edges[e].boundary);
  }
  for (int v = 0; v < m.nverts(); ++v) CHECK(same_bits(r.Av[v], m.Av[v]));
  CHECK(r.ce_edge == m.ce_edge);
  CHECK(r.cv_vert == m.cv_vert);
  CHECK(r.rim_edge == m.rim_edge);
}

}  // namespace

TEST_SUITE("mesh_io") {

TEST_CASE("save and load are a bit exact round trip") {
  check_roundtrip(testsup::global_pack(2).mesh, "global");
  check_roundtrip(testsup::hemi_pack().mesh, "hemi");
}

TEST_CASE("format_double survives parsing") {
  for (double x : {M_PI, 1.0 / 3.0, 6.37122e6, -0.0, 1e-300, 540.1396065614002}) {
    const std::string s = swe::format_double(x);
    CHECK(same_bits(std::stod(s), x));
  }
}

TEST_CASE("tampered files are rejected") {
  const fs::path p = temp_file("tamper.mesh");
  swe::save_mesh(testsup::global_pack(2).mesh, p.string());
  const std::string good = slurp(p);

  SUBCASE("corrupted area value") {
    // Scale the first cell area by 2x: the [cells] section starts right after
    // its header line, and the area is the fourth field.
    std::string bad = good;
    const auto sec = bad.find("[cells]\n");
    REQUIRE(sec != std::string::npos);
    auto pos = bad.find('\n', sec) + 1;
    for (int field = 0; field < 3; ++field) pos = bad.find(' ', pos) + 1;
    bad.insert(pos, "9");
    spit(p, bad);
    CHECK_THROWS(swe::load_mesh(p.string()));
  }

  SUBCASE("truncated file") {
    spit(p, good.substr(0, good.size() / 2));
    CHECK_THROWS(swe::load_mesh(p.string()));
  }

  SUBCASE("wrong header count") {
    std::string bad = good;
    const auto pos = bad.find("cells 162");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 9, "cells 163");
    spit(p, bad);
    CHECK_THROWS(swe::load_mesh(p.string()));
  }

  SUBCASE("unsupported version") {
    std::string bad = good;
    const auto pos = bad.find("format_version 1");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 16, "format_version 7");
    spit(p, bad);
    CHECK_THROWS(swe::load_mesh(p.string()));
  }
}

TEST_CASE("missing file reports cleanly") {
  CHECK_THROWS(swe::load_mesh("/nonexistent/path/to/mesh.txt"));
}

}  // TEST_SUITE
