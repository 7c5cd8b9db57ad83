#include "swe/ops/sparse.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace swe {

void Csr::mul(const double* x, double* y) const {
  for (int r = 0; r < nrows; ++r) {
    double s = 0.0;
    for (int k = rowptr[r]; k < rowptr[r + 1]; ++k) s += val[k] * x[col[k]];
    y[r] = s;
  }
}

void Csr::mul_add(const double* x, double* y) const {
  for (int r = 0; r < nrows; ++r) {
    double s = 0.0;
    for (int k = rowptr[r]; k < rowptr[r + 1]; ++k) s += val[k] * x[col[k]];
    y[r] += s;
  }
}

std::vector<double> Csr::mul(const std::vector<double>& x) const {
  assert(static_cast<int>(x.size()) == ncols);
  std::vector<double> y(nrows);
  mul(x.data(), y.data());
  return y;
}

Csr Csr::transposed() const {
  Csr t;
  t.nrows = ncols;
  t.ncols = nrows;
  t.rowptr.assign(ncols + 1, 0);
  for (int c : col) ++t.rowptr[c + 1];
  for (int r = 0; r < ncols; ++r) t.rowptr[r + 1] += t.rowptr[r];
  t.col.resize(col.size());
  t.val.resize(val.size());
  std::vector<int> cursor(t.rowptr.begin(), t.rowptr.end() - 1);
  for (int r = 0; r < nrows; ++r)
    for (int k = rowptr[r]; k < rowptr[r + 1]; ++k) {
      const int pos = cursor[col[k]]++;
      t.col[pos] = r;
      t.val[pos] = val[k];
    }
  return t;
}

std::vector<double> Csr::diagonal() const {
  std::vector<double> d(nrows, 0.0);
  for (int r = 0; r < nrows; ++r)
    for (int k = rowptr[r]; k < rowptr[r + 1]; ++k)
      if (col[k] == r) d[r] += val[k];
  return d;
}

int Csr::find(int r, int c) const {
  for (int k = rowptr[r]; k < rowptr[r + 1]; ++k)
    if (col[k] == c) return k;
  return -1;
}

Csr csr_from_triplets(int nrows, int ncols, std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  Csr m;
  m.nrows = nrows;
  m.ncols = ncols;
  m.rowptr.assign(nrows + 1, 0);
  for (std::size_t k = 0; k < entries.size();) {
    std::size_t j = k;
    double s = 0.0;
    while (j < entries.size() && entries[j].row == entries[k].row &&
           entries[j].col == entries[k].col) {
      s += entries[j].val;
      ++j;
    }
    m.col.push_back(entries[k].col);
    m.val.push_back(s);
    ++m.rowptr[entries[k].row + 1];
    k = j;
  }
  for (int r = 0; r < nrows; ++r) m.rowptr[r + 1] += m.rowptr[r];
  return m;
}

Csr csr_matmul(const Csr& a, const Csr& b) {
  assert(a.ncols == b.nrows);
  Csr c;
  c.nrows = a.nrows;
  c.ncols = b.ncols;
  c.rowptr.assign(a.nrows + 1, 0);
  std::vector<double> acc(b.ncols, 0.0);
  std::vector<int> mark(b.ncols, -1);
  std::vector<int> touched;
  for (int r = 0; r < a.nrows; ++r) {
    touched.clear();
    for (int ka = a.rowptr[r]; ka < a.rowptr[r + 1]; ++ka) {
      const int mid = a.col[ka];
      const double av = a.val[ka];
      for (int kb = b.rowptr[mid]; kb < b.rowptr[mid + 1]; ++kb) {
        if (mark[b.col[kb]] != r) {
          mark[b.col[kb]] = r;
          acc[b.col[kb]] = 0.0;
          touched.push_back(b.col[kb]);
        }
        acc[b.col[kb]] += av * b.val[kb];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int cc : touched) {
      c.col.push_back(cc);
      c.val.push_back(acc[cc]);
    }
    c.rowptr[r + 1] = static_cast<int>(c.col.size());
  }
  return c;
}

Csr csr_add(const Csr& a, const Csr& b, double ca, double cb) {
  assert(a.nrows == b.nrows && a.ncols == b.ncols);
  std::vector<Triplet> t;
  t.reserve(a.val.size() + b.val.size());
  for (int r = 0; r < a.nrows; ++r)
    for (int k = a.rowptr[r]; k < a.rowptr[r + 1]; ++k) t.push_back({r, a.col[k], ca * a.val[k]});
  for (int r = 0; r < b.nrows; ++r)
    for (int k = b.rowptr[r]; k < b.rowptr[r + 1]; ++k) t.push_back({r, b.col[k], cb * b.val[k]});
  return csr_from_triplets(a.nrows, a.ncols, std::move(t));
}

double csr_max_abs(const Csr& a) {
  double m = 0.0;
  for (double v : a.val) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace swe
