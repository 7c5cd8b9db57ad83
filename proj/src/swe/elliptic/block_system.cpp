#include "swe/elliptic/block_system.hpp"

#include <cmath>
#include <numeric>

#include "swe/core/error.hpp"
#include "swe/core/kernels.hpp"

namespace swe {

EllipticSystem::EllipticSystem(const Mesh& m, EllipticOptions opt) : opt_(opt) {
  build_patterns(m);
}

void EllipticSystem::build_patterns(const Mesh& m) {
  ncells_ = m.ncells();
  bounded_ = m.bounded();
  area_ = m.Ac;
  total_area_ = std::accumulate(area_.begin(), area_.end(), 0.0);

  edge_cells_.resize(m.nedges());
  for (int e = 0; e < m.nedges(); ++e) edge_cells_[e] = {m.edges[e].c0, m.edges[e].c1};

  pin_psi_.assign(ncells_, 0);
  pin_chi_.assign(ncells_, 0);
  if (bounded_)
    for (int k = 0; k < m.nb; ++k) pin_psi_[k] = 1;
  else
    pin_psi_[0] = 1;
  pin_chi_[0] = 1;

  // Laplacian blocks: per edge, weight l/d times the edge thickness factor,
  // positive on the diagonal in the stored (negated) form.
  struct Contrib {
    int row, col, edge;
    double coef;
  };
  std::vector<Contrib> cp, cq, cr;
  for (int e = 0; e < m.nedges(); ++e) {
    const auto& ed = m.edges[e];
    const double w = ed.l / ed.d;
    const int entries[4][2] = {{ed.c0, ed.c0}, {ed.c1, ed.c1}, {ed.c0, ed.c1}, {ed.c1, ed.c0}};
    const double coefs[4] = {w, w, -w, -w};
    for (int k = 0; k < 4; ++k) {
      const int r = entries[k][0], c = entries[k][1];
      if (!pin_psi_[r] && !pin_psi_[c]) cp.push_back({r, c, e, coefs[k]});
      if (!pin_chi_[r] && !pin_chi_[c]) cq.push_back({r, c, e, coefs[k]});
    }
  }

  // Coupling block, stored negated. Contributions are emitted in mirrored
  // pairs so the underlying matrix is skew to the last bit, and vertex major
  // so the two edges a cell pair shares around one vertex land adjacently:
  // with uniform thickness their coefficients cancel exactly.
  for (int v = 0; v < m.nverts(); ++v) {
    const auto& vc = m.vert_cells[v];
    const auto& ve = m.vert_edges[v];
    for (int kc = 0; kc < 3; ++kc) {
      const int c = vc[kc];
      const double kv = m.kite[v][kc];
      for (int kj = 0; kj < 3; ++kj) {
        const int j = vc[kj];
        if (j == c) continue;
        for (int t = 0; t < 3; ++t) {
          const int e = ve[t];
          const auto& ed = m.edges[e];
          if (!ed.dual_active) continue;
          if (ed.c0 != j && ed.c1 != j) continue;
          const double sigma = (ed.v0 == v) ? 1.0 : -1.0;
          const double sbar = (j == ed.c1) ? 1.0 : -1.0;
          const double coef = 0.5 * kv * sigma * sbar / m.Av[v];
          if (!pin_psi_[c] && !pin_chi_[j]) cr.push_back({c, j, e, coef});
          if (!pin_psi_[j] && !pin_chi_[c]) cr.push_back({j, c, e, -coef});
        }
      }
    }
  }

  const auto build = [this](const std::vector<Contrib>& contribs, const std::vector<char>& pins,
                            bool pin_diag, Csr& mat, std::vector<Item>& items,
                            std::vector<int>* pin_idx) {
    std::vector<Triplet> pat;
    pat.reserve(contribs.size() + ncells_);
    for (const auto& c : contribs) pat.push_back({c.row, c.col, 0.0});
    if (pin_diag)
      for (int i = 0; i < ncells_; ++i)
        if (pins[i]) pat.push_back({i, i, 0.0});
    mat = csr_from_triplets(ncells_, ncells_, std::move(pat));
    items.clear();
    items.reserve(contribs.size());
    for (const auto& c : contribs) items.push_back({mat.find(c.row, c.col), c.edge, c.coef});
    if (pin_idx) {
      pin_idx->clear();
      for (int i = 0; i < ncells_; ++i)
        if (pins[i]) pin_idx->push_back(mat.find(i, i));
    }
  };

  build(cp, pin_psi_, true, ps_, items_p_, &pin_idx_p_);
  build(cq, pin_chi_, true, qs_, items_q_, &pin_idx_q_);
  build(cr, pin_psi_, false, rs_, items_r_, nullptr);
}

void EllipticSystem::scatter(Csr& mat, const std::vector<Item>& items,
                             const std::vector<int>& pins) const {
  std::fill(mat.val.begin(), mat.val.end(), 0.0);
  for (const auto& it : items) mat.val[it.idx] += h_[it.edge] * it.coef;
  for (int idx : pins) mat.val[idx] = 1.0;
}

void EllipticSystem::set_thickness(const std::vector<double>& phi) {
  if (static_cast<int>(phi.size()) != ncells_) throw numerical_error("elliptic: thickness size");
  h_.resize(edge_cells_.size());
  for (std::size_t e = 0; e < edge_cells_.size(); ++e) {
    const double ph = 0.5 * (phi[edge_cells_[e][0]] + phi[edge_cells_[e][1]]);
    if (!(ph > 0.0)) throw numerical_error("elliptic: nonpositive thickness");
    h_[e] = 1.0 / ph;
  }

  static const std::vector<int> no_pins;
  scatter(ps_, items_p_, pin_idx_p_);
  scatter(qs_, items_q_, pin_idx_q_);
  scatter(rs_, items_r_, no_pins);
  rst_ = rs_.transposed();

  if (!jac_p_) {
    jac_p_ = std::make_unique<JacobiPreconditioner>(ps_);
    jac_q_ = std::make_unique<JacobiPreconditioner>(qs_);
  } else {
    jac_p_->refresh(ps_);
    jac_q_->refresh(qs_);
  }
  if (opt_.inner == "amg") {
    if (!amg_p_) {
      amg_p_ = std::make_unique<AmgPreconditioner>(ps_);
      amg_q_ = std::make_unique<AmgPreconditioner>(qs_);
    } else if (opt_.amg_refresh_steps > 0 && refresh_count_ % opt_.amg_refresh_steps == 0) {
      amg_p_->refresh(ps_);
      amg_q_->refresh(qs_);
    }
  }
  ++refresh_count_;
}

EllipticStats EllipticSystem::solve(const std::vector<double>& zeta,
                                    const std::vector<double>& gamma, std::vector<double>& psi,
                                    std::vector<double>& chi) {
  if (h_.empty()) throw numerical_error("elliptic: set_thickness not called");
  const std::size_t n = static_cast<std::size_t>(ncells_);
  psi.resize(n, 0.0);
  chi.resize(n, 0.0);

  // Compatibility projection: remove the area weighted mean so the right
  // hand side is consistent with the gauge. The vorticity side keeps its
  // mean on bounded meshes, where boundary circulation carries it.
  std::vector<double> zt = zeta, gt = gamma;
  if (!bounded_) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += area_[i] * zt[i];
    const double mean = s / total_area_;
    for (double& x : zt) x -= mean;
  }
  {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += area_[i] * gt[i];
    const double mean = s / total_area_;
    for (double& x : gt) x -= mean;
  }

  std::vector<double> f(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = pin_psi_[i] ? 0.0 : -area_[i] * zt[i];
    g[i] = pin_chi_[i] ? 0.0 : -area_[i] * gt[i];
    if (pin_psi_[i]) psi[i] = 0.0;
    if (pin_chi_[i]) chi[i] = 0.0;
  }

  const double bnorm =
      std::sqrt(kern::dot(f.data(), f.data(), n) + kern::dot(g.data(), g.data(), n));
  EllipticStats st;
  if (bnorm == 0.0) {
    std::fill(psi.begin(), psi.end(), 0.0);
    std::fill(chi.begin(), chi.end(), 0.0);
    return st;
  }

  const Preconditioner& mp = (opt_.inner == "amg") ? static_cast<Preconditioner&>(*amg_p_)
                                                   : static_cast<Preconditioner&>(*jac_p_);
  const Preconditioner& mq = (opt_.inner == "amg") ? static_cast<Preconditioner&>(*amg_q_)
                                                   : static_cast<Preconditioner&>(*jac_q_);

  std::vector<double> t1(n), t2(n), rhs1(n), rhs2(n);
  for (int outer = 0;; ++outer) {
    ps_.mul(psi.data(), t1.data());
    rs_.mul_add(chi.data(), t1.data());
    rst_.mul(psi.data(), t2.data());
    qs_.mul_add(chi.data(), t2.data());
    double r2sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = f[i] - t1[i];
      const double b = g[i] - t2[i];
      r2sum += a * a + b * b;
    }
    st.outer_iters = outer;
    st.rel_residual = std::sqrt(r2sum) / bnorm;
    if (!std::isfinite(st.rel_residual)) throw numerical_error("elliptic: non finite residual");
    if (st.rel_residual <= opt_.outer_tol) return st;
    if (outer >= opt_.outer_max) throw numerical_error("elliptic: block splitting stalled");

    rs_.mul(chi.data(), t1.data());
    rst_.mul(psi.data(), t2.data());
    for (std::size_t i = 0; i < n; ++i) {
      rhs1[i] = f[i] - t1[i];
      rhs2[i] = g[i] - t2[i];
    }
    st.inner_iters += pcg(ps_, rhs1, psi, mp, opt_.inner_tol, opt_.inner_max).iters;
    st.inner_iters += pcg(qs_, rhs2, chi, mq, opt_.inner_tol, opt_.inner_max).iters;
  }
}

namespace {

Csr scale_rows(Csr a, const std::vector<double>& s) {
  for (int r = 0; r < a.nrows; ++r)
    for (int k = a.rowptr[r]; k < a.rowptr[r + 1]; ++k) a.val[k] *= s[r];
  return a;
}

Csr scale_cols(Csr a, const std::vector<double>& s) {
  for (std::size_t k = 0; k < a.val.size(); ++k) a.val[k] *= s[a.col[k]];
  return a;
}

double rel_defect(const Csr& lhs, const Csr& rhs, double sign, double denom) {
  if (denom == 0.0) return 0.0;
  return csr_max_abs(csr_add(lhs, rhs, 1.0, sign)) / denom;
}

}  // namespace

StructureReport verify_block_structure(const Mesh& m, const Operators& ops,
                                       const std::vector<double>& phi) {
  std::vector<double> h(m.nedges());
  for (int e = 0; e < m.nedges(); ++e)
    h[e] = 2.0 / (phi[m.edges[e].c0] + phi[m.edges[e].c1]);

  const Csr p = csr_matmul(scale_rows(ops.C, m.Ac), scale_rows(ops.S, h));
  const Csr q = csr_matmul(scale_rows(ops.D, m.Ac), scale_rows(ops.G, h));
  const Csr t1 = csr_matmul(csr_matmul(scale_rows(ops.M, m.Ac), scale_cols(ops.Ch, h)), ops.G);
  const Csr t2 = csr_matmul(scale_cols(scale_rows(ops.C, m.Ac), h), csr_matmul(ops.Gh, ops.N));
  const Csr r = csr_add(t1, t2, 0.5, 0.5);

  StructureReport rep;
  rep.p_sym = rel_defect(p, p.transposed(), -1.0, csr_max_abs(p));
  rep.q_sym = rel_defect(q, q.transposed(), -1.0, csr_max_abs(q));
  rep.r_skew = rel_defect(r, r.transposed(), 1.0, csr_max_abs(r));
  rep.pq_diff = rel_defect(p, q, -1.0, csr_max_abs(p));
  return rep;
}

}  // namespace swe
