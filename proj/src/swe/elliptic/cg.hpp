#pragma once
#include <vector>

#include "swe/ops/sparse.hpp"

namespace swe {

class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  // z := M^{-1} r
  virtual void apply(const std::vector<double>& r, std::vector<double>& z) const = 0;
};

class JacobiPreconditioner : public Preconditioner {
 public:
  explicit JacobiPreconditioner(const Csr& a) { refresh(a); }
  void refresh(const Csr& a);
  void apply(const std::vector<double>& r, std::vector<double>& z) const override;

 private:
  std::vector<double> invdiag_;
};

struct CgStats {
  int iters = 0;
  double rel_residual = 0.0;
};

// Preconditioned conjugate gradients for a symmetric positive definite
// matrix. x carries the initial guess on entry and the solution on exit.
// Convergence test is ||b - A x|| <= rel_tol * ||b||. Throws numerical_error
// on indefinite directions, non finite values, or iteration overrun.
CgStats pcg(const Csr& a, const std::vector<double>& b, std::vector<double>& x,
            const Preconditioner& m, double rel_tol, int max_iters);

}  // namespace swe
