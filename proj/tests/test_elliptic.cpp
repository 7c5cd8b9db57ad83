#include <cmath>
#include <vector>

#include "doctest.h"
#include "swe/core/error.hpp"
#include "swe/elliptic/amg.hpp"
#include "swe/elliptic/block_system.hpp"
#include "swe/elliptic/cg.hpp"
#include "tests/test_support.hpp"

using swe::Csr;

namespace {

// Symmetric positive definite tridiagonal test matrix: 3 on the diagonal,
// -1 off it. Strictly diagonally dominant, so pcg has no excuses.
Csr tridiag_spd(int n) {
  std::vector<swe::Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 3.0});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  return swe::csr_from_triplets(n, n, std::move(t));
}

// Pinned thickness weighted Laplacian block from the coupled solver, used
// here as a realistic SPD matrix for the multigrid tests.
Csr mesh_spd_matrix(const testsup::MeshPack& p, const std::vector<double>& phi) {
  swe::EllipticSystem sys(p.mesh, swe::EllipticOptions{});
  sys.set_thickness(phi);
  return sys.solver_p();
}

double resid_norm(const Csr& a, const std::vector<double>& b, const std::vector<double>& x) {
  const auto ax = a.mul(x);
  double r2 = 0.0, b2 = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    r2 += (b[i] - ax[i]) * (b[i] - ax[i]);
    b2 += b[i] * b[i];
  }
  return std::sqrt(r2 / b2);
}

}  // namespace

TEST_SUITE("elliptic") {

TEST_CASE("jacobi preconditioner divides by the diagonal") {
  const Csr a = tridiag_spd(5);
  swe::JacobiPreconditioner m(a);
  std::vector<double> r = {3.0, -6.0, 9.0, 0.0, 1.5}, z;
  m.apply(r, z);
  REQUIRE(z.size() == r.size());
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(z[i] == r[i] / 3.0);
}

TEST_CASE("pcg recovers a known solution") {
  const int n = 50;
  const Csr a = tridiag_spd(n);
  const auto xtrue = testsup::random_vec(n, 7, -2.0, 2.0);
  const auto b = a.mul(xtrue);
  std::vector<double> x(n, 0.0);
  const swe::JacobiPreconditioner m(a);
  const auto st = swe::pcg(a, b, x, m, 1e-13, 1000);
  CHECK(st.iters > 0);
  CHECK(st.iters < n);
  CHECK(st.rel_residual <= 1e-13);
  for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(xtrue[i]).epsilon(1e-10));
}

TEST_CASE("pcg refuses an indefinite matrix") {
  const Csr a = swe::csr_from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, -1.0}});
  const std::vector<double> b = {0.0, 1.0};
  std::vector<double> x(2, 0.0);
  const swe::JacobiPreconditioner m(a);
  CHECK_THROWS_AS(swe::pcg(a, b, x, m, 1e-10, 100), swe::numerical_error);
}

TEST_CASE("multigrid preconditioning beats jacobi on a mesh laplacian") {
  const testsup::MeshPack& p = testsup::global_pack(3);
  const auto phi = testsup::random_vec(p.mesh.ncells(), 11, 700.0, 1300.0);
  const Csr a = mesh_spd_matrix(p, phi);
  const auto b = testsup::random_vec(a.nrows, 12, -1.0, 1.0);

  std::vector<double> xj(b.size(), 0.0), xa(b.size(), 0.0);
  const swe::JacobiPreconditioner mj(a);
  swe::AmgPreconditioner ma(a);
  CHECK(ma.levels() >= 2);

  const auto sj = swe::pcg(a, b, xj, mj, 1e-12, 20000);
  const auto sa = swe::pcg(a, b, xa, ma, 1e-12, 20000);
  CHECK(sa.iters < sj.iters);
  CHECK(resid_norm(a, b, xa) <= 1e-11);

  // Same gauge, same matrix: the two solves agree up to the tolerance.
  double gap = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < xj.size(); ++i) {
    gap = std::max(gap, std::abs(xj[i] - xa[i]));
    scale = std::max(scale, std::abs(xj[i]));
  }
  CHECK(gap / scale < 1e-8);
}

TEST_CASE("multigrid refresh tracks new values on the old sparsity") {
  const testsup::MeshPack& p = testsup::global_pack(2);
  const auto phi = testsup::random_vec(p.mesh.ncells(), 21, 700.0, 1300.0);
  Csr a = mesh_spd_matrix(p, phi);
  swe::AmgPreconditioner ma(a);

  for (double& v : a.val) v *= 4.0;
  ma.refresh(a);
  const auto b = testsup::random_vec(a.nrows, 22, -1.0, 1.0);
  std::vector<double> x(b.size(), 0.0);
  swe::pcg(a, b, x, ma, 1e-12, 20000);
  CHECK(resid_norm(a, b, x) <= 1e-11);
}

TEST_CASE("block structure identities hold with random thickness") {
  for (const testsup::MeshPack* p : {&testsup::global_pack(2), &testsup::hemi_pack()}) {
    const auto phi = testsup::random_vec(p->mesh.ncells(), 31, 500.0, 1500.0);
    const auto rep = swe::verify_block_structure(p->mesh, p->ops, phi);
    CHECK(rep.p_sym < 1e-12);
    CHECK(rep.q_sym < 1e-12);
    CHECK(rep.r_skew < 1e-12);
    CHECK(rep.pq_diff < 1e-12);
  }
}

TEST_CASE("uniform thickness on a closed mesh decouples the blocks") {
  const testsup::MeshPack& p = testsup::global_pack(2);
  swe::EllipticOptions opt;
  opt.outer_tol = 1e-12;
  opt.inner_tol = 1e-13;
  swe::EllipticSystem sys(p.mesh, opt);
  sys.set_thickness(std::vector<double>(p.mesh.ncells(), 1000.0));

  // The coupling block cancels pair by pair, to the bit.
  CHECK(swe::csr_max_abs(sys.solver_r()) == 0.0);

  const auto zeta = testsup::random_vec(p.mesh.ncells(), 41, -1e-5, 1e-5);
  const auto gamma = testsup::random_vec(p.mesh.ncells(), 42, -1e-6, 1e-6);
  std::vector<double> psi, chi;
  const auto st = sys.solve(zeta, gamma, psi, chi);
  CHECK(st.outer_iters == 1);
  CHECK(st.rel_residual <= 1e-12);
  CHECK(psi[0] == 0.0);
  CHECK(chi[0] == 0.0);

  // Re-solving from the converged warm start costs no outer rounds.
  const auto st2 = sys.solve(zeta, gamma, psi, chi);
  CHECK(st2.outer_iters == 0);
}

TEST_CASE("projected right hand sides: constant inputs solve to zero") {
  const testsup::MeshPack& p = testsup::global_pack(2);
  swe::EllipticSystem sys(p.mesh, swe::EllipticOptions{});
  sys.set_thickness(std::vector<double>(p.mesh.ncells(), 900.0));
  std::vector<double> psi, chi;
  const auto st = sys.solve(std::vector<double>(p.mesh.ncells(), 3.5e-5),
                            std::vector<double>(p.mesh.ncells(), -2.0e-6), psi, chi);
  CHECK(st.outer_iters == 0);
  for (double v : psi) CHECK(v == 0.0);
  for (double v : chi) CHECK(v == 0.0);
}

TEST_CASE("bounded mesh couples the blocks even with uniform thickness") {
  const testsup::MeshPack& p = testsup::hemi_pack();
  const int nb = p.mesh.nb;
  REQUIRE(nb > 0);
  swe::EllipticSystem sys(p.mesh, swe::EllipticOptions{});
  sys.set_thickness(std::vector<double>(p.mesh.ncells(), 1000.0));
  CHECK(swe::csr_max_abs(sys.solver_r()) > 0.0);

  const auto zeta = testsup::random_vec(p.mesh.ncells(), 51, -1e-5, 1e-5);
  const auto gamma = testsup::random_vec(p.mesh.ncells(), 52, -1e-6, 1e-6);
  std::vector<double> psi, chi;
  const auto st = sys.solve(zeta, gamma, psi, chi);
  CHECK(st.outer_iters > 1);
  CHECK(st.outer_iters <= 20);
  CHECK(st.rel_residual <= 1e-10);
  for (int k = 0; k < nb; ++k) CHECK(psi[k] == 0.0);
  CHECK(chi[0] == 0.0);
}

TEST_CASE("nonuniform thickness converges with both inner solvers") {
  const testsup::MeshPack& p = testsup::global_pack(3);
  const auto phi = testsup::random_vec(p.mesh.ncells(), 61, 700.0, 1300.0);
  const auto zeta = testsup::random_vec(p.mesh.ncells(), 62, -2e-5, 2e-5);
  const auto gamma = testsup::random_vec(p.mesh.ncells(), 63, -2e-6, 2e-6);

  std::vector<double> psi_cg, chi_cg, psi_mg, chi_mg;
  swe::EllipticOptions oc;
  oc.outer_tol = 1e-12;
  oc.inner_tol = 1e-13;
  swe::EllipticSystem scg(p.mesh, oc);
  scg.set_thickness(phi);
  const auto stc = scg.solve(zeta, gamma, psi_cg, chi_cg);
  CHECK(stc.outer_iters <= 40);
  CHECK(stc.rel_residual <= 1e-12);

  swe::EllipticOptions om = oc;
  om.inner = "amg";
  swe::EllipticSystem smg(p.mesh, om);
  smg.set_thickness(phi);
  const auto stm = smg.solve(zeta, gamma, psi_mg, chi_mg);
  CHECK(stm.rel_residual <= 1e-12);

  double gap = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < psi_cg.size(); ++i) {
    gap = std::max({gap, std::abs(psi_cg[i] - psi_mg[i]), std::abs(chi_cg[i] - chi_mg[i])});
    scale = std::max({scale, std::abs(psi_cg[i]), std::abs(chi_cg[i])});
  }
  CHECK(gap / scale < 1e-7);
}

TEST_CASE("thickness validation") {
  const testsup::MeshPack& p = testsup::global_pack(2);
  swe::EllipticSystem sys(p.mesh, swe::EllipticOptions{});
  std::vector<double> psi, chi;

  // Solving before set_thickness is a programming error.
  CHECK_THROWS_AS(sys.solve({}, {}, psi, chi), swe::numerical_error);

  CHECK_THROWS_AS(sys.set_thickness(std::vector<double>(3, 1000.0)), swe::numerical_error);
  std::vector<double> bad(p.mesh.ncells(), 1000.0);
  bad[7] = -1.0;
  CHECK_THROWS_AS(sys.set_thickness(bad), swe::numerical_error);
}

}  // TEST_SUITE
