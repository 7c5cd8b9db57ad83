#include "swe/elliptic/cg.hpp"

#include <cmath>

#include "swe/core/error.hpp"
#include "swe/core/kernels.hpp"

namespace swe {

void JacobiPreconditioner::refresh(const Csr& a) {
  invdiag_ = a.diagonal();
  for (double& d : invdiag_) {
    if (!(d > 0.0)) throw numerical_error("jacobi: nonpositive diagonal");
    d = 1.0 / d;
  }
}

void JacobiPreconditioner::apply(const std::vector<double>& r, std::vector<double>& z) const {
  z.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) z[i] = invdiag_[i] * r[i];
}

CgStats pcg(const Csr& a, const std::vector<double>& b, std::vector<double>& x,
            const Preconditioner& m, double rel_tol, int max_iters) {
  const std::size_t n = b.size();
  x.resize(n, 0.0);

  const double bnorm = std::sqrt(kern::dot(b.data(), b.data(), n));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  a.mul(x.data(), r.data());
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];

  double rnorm = std::sqrt(kern::dot(r.data(), r.data(), n));
  if (rnorm <= rel_tol * bnorm) return {0, rnorm / bnorm};

  m.apply(r, z);
  p = z;
  double rz = kern::dot(r.data(), z.data(), n);

  for (int it = 1; it <= max_iters; ++it) {
    a.mul(p.data(), q.data());
    const double pq = kern::dot(p.data(), q.data(), n);
    if (!(pq > 0.0)) throw numerical_error("pcg: indefinite direction");
    const double alpha = rz / pq;
    kern::axpy(n, alpha, p.data(), x.data());
    kern::axpy(n, -alpha, q.data(), r.data());

    rnorm = std::sqrt(kern::dot(r.data(), r.data(), n));
    if (!std::isfinite(rnorm)) throw numerical_error("pcg: non finite residual");
    if (rnorm <= rel_tol * bnorm) return {it, rnorm / bnorm};

    m.apply(r, z);
    const double rz_next = kern::dot(r.data(), z.data(), n);
    const double beta = rz_next / rz;
    rz = rz_next;
    kern::xpay(n, z.data(), beta, p.data());
  }
  throw numerical_error("pcg: no convergence within iteration limit");
}

}  // namespace swe
