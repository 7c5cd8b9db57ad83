#pragma once
#include <cstddef>
#include <vector>

namespace swe {

// Compressed sparse row matrix. Rows are short (mesh stencils), so all the
// apply loops stay scalar; determinism comes from fixed entry order.
struct Csr {
  int nrows = 0;
  int ncols = 0;
  std::vector<int> rowptr;  // size nrows+1
  std::vector<int> col;
  std::vector<double> val;

  void mul(const double* x, double* y) const;       // y = A x
  void mul_add(const double* x, double* y) const;   // y += A x
  std::vector<double> mul(const std::vector<double>& x) const;

  Csr transposed() const;
  std::vector<double> diagonal() const;

  // Entry lookup; returns -1 when (r,c) is not in the pattern.
  int find(int r, int c) const;
};

struct Triplet {
  int row;
  int col;
  double val;
};

// Duplicate (row, col) entries are summed. Column order inside each row is
// ascending, so assembly is reproducible regardless of triplet order.
Csr csr_from_triplets(int nrows, int ncols, std::vector<Triplet> entries);

// C = A * B (small matrices only: used by the multigrid Galerkin products).
Csr csr_matmul(const Csr& a, const Csr& b);

// C = ca * A + cb * B on the union pattern.
Csr csr_add(const Csr& a, const Csr& b, double ca, double cb);

// Largest absolute entry (0 for an empty matrix).
double csr_max_abs(const Csr& a);

}  // namespace swe
