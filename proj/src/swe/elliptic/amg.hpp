#pragma once
#include <vector>

#include "swe/elliptic/cg.hpp"
#include "swe/ops/sparse.hpp"

namespace swe {

// Smoothed aggregation multigrid V cycle, used as a preconditioner inside
// conjugate gradients. Aggregates are formed greedily from a strength graph,
// tentative interpolation is one column per aggregate, and a single damped
// Jacobi sweep smooths it. One forward Gauss Seidel sweep before and one
// backward sweep after the coarse correction keep the cycle symmetric. The
// coarsest level is solved with a dense Cholesky factorization.
class AmgPreconditioner : public Preconditioner {
 public:
  struct Options {
    double strength = 0.08;
    int max_coarse = 400;
    int power_iters = 10;
    int max_levels = 25;
  };

  AmgPreconditioner(const Csr& a, Options opt);
  explicit AmgPreconditioner(const Csr& a) : AmgPreconditioner(a, Options()) {}

  // Recompute the Galerkin chain for new values on the same fine sparsity.
  // Aggregates and interpolation stay fixed.
  void refresh(const Csr& a);

  void apply(const std::vector<double>& r, std::vector<double>& z) const override;

  int levels() const { return static_cast<int>(levels_.size()) + 1; }

 private:
  struct Level {
    Csr a;
    Csr p;   // interpolation from the next coarser level
    Csr pt;  // restriction
    std::vector<double> invdiag;
  };

  void rebuild_values(const Csr& a0);
  void factor_coarsest();
  void vcycle(std::size_t lvl, const std::vector<double>& b, std::vector<double>& x) const;

  Options opt_;
  std::vector<Level> levels_;
  Csr coarse_a_;
  int ncoarse_ = 0;
  std::vector<double> chol_;  // dense lower factor, row major
  mutable std::vector<std::vector<double>> rwork_, xwork_, twork_;
};

}  // namespace swe
