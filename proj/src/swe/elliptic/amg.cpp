#include "swe/elliptic/amg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "swe/core/error.hpp"

namespace swe {

namespace {

// Strong connections: |a_ij| >= theta * sqrt(a_ii a_jj), i != j.
std::vector<std::vector<int>> strength_graph(const Csr& a, double theta) {
  const std::vector<double> d = a.diagonal();
  std::vector<std::vector<int>> strong(a.nrows);
  for (int r = 0; r < a.nrows; ++r) {
    for (int k = a.rowptr[r]; k < a.rowptr[r + 1]; ++k) {
      const int c = a.col[k];
      if (c == r) continue;
      if (std::abs(a.val[k]) >= theta * std::sqrt(std::abs(d[r] * d[c])))
        strong[r].push_back(c);
    }
  }
  return strong;
}

// Greedy aggregation: seed aggregates from nodes whose strong neighborhood
// is untouched, attach leftovers to the most strongly connected neighbor
// aggregate, then sweep stragglers into fresh aggregates.
std::vector<int> aggregate(const Csr& a, const std::vector<std::vector<int>>& strong, int* nagg) {
  const int n = a.nrows;
  std::vector<int> agg(n, -1);
  int next = 0;

  for (int i = 0; i < n; ++i) {
    if (agg[i] != -1) continue;
    bool free_nbhd = true;
    for (int j : strong[i])
      if (agg[j] != -1) {
        free_nbhd = false;
        break;
      }
    if (!free_nbhd) continue;
    agg[i] = next;
    for (int j : strong[i]) agg[j] = next;
    ++next;
  }

  const std::vector<int> seeded = agg;
  for (int i = 0; i < n; ++i) {
    if (agg[i] != -1) continue;
    double best = -1.0;
    int pick = -1;
    for (int k = a.rowptr[i]; k < a.rowptr[i + 1]; ++k) {
      const int j = a.col[k];
      if (j == i || seeded[j] == -1) continue;
      const double w = std::abs(a.val[k]);
      if (w > best) {
        best = w;
        pick = seeded[j];
      }
    }
    if (pick != -1) agg[i] = pick;
  }

  for (int i = 0; i < n; ++i) {
    if (agg[i] != -1) continue;
    agg[i] = next;
    for (int j : strong[i])
      if (agg[j] == -1) agg[j] = next;
    ++next;
  }

  *nagg = next;
  return agg;
}

double spectral_estimate(const Csr& a, const std::vector<double>& invdiag, int iters) {
  const std::size_t n = invdiag.size();
  std::mt19937_64 rng(42);
  std::vector<double> v(n), w(n);
  for (auto& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  double rho = 0.0;
  for (int it = 0; it < iters; ++it) {
    a.mul(v.data(), w.data());
    for (std::size_t i = 0; i < n; ++i) w[i] *= invdiag[i];
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw numerical_error("amg: spectral estimate collapsed");
    rho = norm;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  return rho;
}

std::vector<double> safe_invdiag(const Csr& a) {
  std::vector<double> d = a.diagonal();
  for (double& x : d) {
    if (!(x > 0.0)) throw numerical_error("amg: nonpositive diagonal");
    x = 1.0 / x;
  }
  return d;
}

void forward_gs(const Csr& a, const std::vector<double>& invdiag, const std::vector<double>& b,
                std::vector<double>& x) {
  for (int r = 0; r < a.nrows; ++r) {
    double s = b[r];
    for (int k = a.rowptr[r]; k < a.rowptr[r + 1]; ++k)
      if (a.col[k] != r) s -= a.val[k] * x[a.col[k]];
    x[r] = s * invdiag[r];
  }
}

void backward_gs(const Csr& a, const std::vector<double>& invdiag, const std::vector<double>& b,
                 std::vector<double>& x) {
  for (int r = a.nrows - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = a.rowptr[r]; k < a.rowptr[r + 1]; ++k)
      if (a.col[k] != r) s -= a.val[k] * x[a.col[k]];
    x[r] = s * invdiag[r];
  }
}

}  // namespace

AmgPreconditioner::AmgPreconditioner(const Csr& a, Options opt) : opt_(opt) {
  Csr cur = a;
  while (cur.nrows > opt_.max_coarse && static_cast<int>(levels_.size()) < opt_.max_levels) {
    const auto strong = strength_graph(cur, opt_.strength);
    int nagg = 0;
    const std::vector<int> agg = aggregate(cur, strong, &nagg);
    if (nagg <= 0 || nagg >= cur.nrows) break;

    std::vector<int> count(nagg, 0);
    for (int g : agg) ++count[g];
    std::vector<Triplet> t;
    t.reserve(agg.size());
    for (int i = 0; i < cur.nrows; ++i)
      t.push_back({i, agg[i], 1.0 / std::sqrt(static_cast<double>(count[agg[i]]))});
    const Csr p0 = csr_from_triplets(cur.nrows, nagg, std::move(t));

    const std::vector<double> invdiag = safe_invdiag(cur);
    const double rho = spectral_estimate(cur, invdiag, opt_.power_iters);
    const double omega = 4.0 / (3.0 * rho);

    Csr dinva = cur;
    for (int r = 0; r < dinva.nrows; ++r)
      for (int k = dinva.rowptr[r]; k < dinva.rowptr[r + 1]; ++k) dinva.val[k] *= invdiag[r];
    const Csr p = csr_add(p0, csr_matmul(dinva, p0), 1.0, -omega);

    Level lvl;
    lvl.a = cur;
    lvl.p = p;
    lvl.pt = p.transposed();
    lvl.invdiag = invdiag;
    const Csr coarse = csr_matmul(lvl.pt, csr_matmul(cur, p));
    levels_.push_back(std::move(lvl));
    cur = coarse;
  }
  coarse_a_ = cur;
  factor_coarsest();

  rwork_.resize(levels_.size() + 1);
  xwork_.resize(levels_.size() + 1);
  twork_.resize(levels_.size() + 1);
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    rwork_[l].resize(levels_[l].a.nrows);
    xwork_[l].resize(levels_[l].a.nrows);
    twork_[l].resize(levels_[l].a.nrows);
  }
  rwork_.back().resize(coarse_a_.nrows);
  xwork_.back().resize(coarse_a_.nrows);
  twork_.back().resize(coarse_a_.nrows);
}

void AmgPreconditioner::refresh(const Csr& a) {
  if (levels_.empty()) {
    if (a.val.size() != coarse_a_.val.size()) throw numerical_error("amg: pattern changed");
    coarse_a_ = a;
    factor_coarsest();
    return;
  }
  if (a.val.size() != levels_[0].a.val.size()) throw numerical_error("amg: pattern changed");
  rebuild_values(a);
}

void AmgPreconditioner::rebuild_values(const Csr& a0) {
  Csr cur = a0;
  for (auto& lvl : levels_) {
    lvl.a = cur;
    lvl.invdiag = safe_invdiag(cur);
    cur = csr_matmul(lvl.pt, csr_matmul(cur, lvl.p));
  }
  coarse_a_ = cur;
  factor_coarsest();
}

void AmgPreconditioner::factor_coarsest() {
  ncoarse_ = coarse_a_.nrows;
  const int n = ncoarse_;
  chol_.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int r = 0; r < n; ++r)
    for (int k = coarse_a_.rowptr[r]; k < coarse_a_.rowptr[r + 1]; ++k)
      chol_[static_cast<std::size_t>(r) * n + coarse_a_.col[k]] = coarse_a_.val[k];

  for (int j = 0; j < n; ++j) {
    double d = chol_[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      const double l = chol_[static_cast<std::size_t>(j) * n + k];
      d -= l * l;
    }
    if (!(d > 0.0)) throw numerical_error("amg: coarse matrix not positive definite");
    const double lj = std::sqrt(d);
    chol_[static_cast<std::size_t>(j) * n + j] = lj;
    for (int i = j + 1; i < n; ++i) {
      double s = chol_[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        s -= chol_[static_cast<std::size_t>(i) * n + k] * chol_[static_cast<std::size_t>(j) * n + k];
      chol_[static_cast<std::size_t>(i) * n + j] = s / lj;
    }
  }
}

void AmgPreconditioner::vcycle(std::size_t lvl, const std::vector<double>& b,
                               std::vector<double>& x) const {
  if (lvl == levels_.size()) {
    // dense solve L L^T x = b
    const int n = ncoarse_;
    for (int i = 0; i < n; ++i) {
      double s = b[i];
      for (int k = 0; k < i; ++k) s -= chol_[static_cast<std::size_t>(i) * n + k] * x[k];
      x[i] = s / chol_[static_cast<std::size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = x[i];
      for (int k = i + 1; k < n; ++k) s -= chol_[static_cast<std::size_t>(k) * n + i] * x[k];
      x[i] = s / chol_[static_cast<std::size_t>(i) * n + i];
    }
    return;
  }

  const Level& l = levels_[lvl];
  std::fill(x.begin(), x.end(), 0.0);
  forward_gs(l.a, l.invdiag, b, x);

  std::vector<double>& res = twork_[lvl];
  l.a.mul(x.data(), res.data());
  for (int i = 0; i < l.a.nrows; ++i) res[i] = b[i] - res[i];

  std::vector<double>& rc = rwork_[lvl + 1];
  std::vector<double>& xc = xwork_[lvl + 1];
  l.pt.mul(res.data(), rc.data());
  vcycle(lvl + 1, rc, xc);
  l.p.mul_add(xc.data(), x.data());

  backward_gs(l.a, l.invdiag, b, x);
}

void AmgPreconditioner::apply(const std::vector<double>& r, std::vector<double>& z) const {
  z.resize(r.size());
  vcycle(0, r, z);
}

}  // namespace swe
