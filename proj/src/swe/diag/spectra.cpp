#include "swe/diag/spectra.hpp"

#include <cmath>
#include <stdexcept>

namespace swe {

double HarmonicCoeffs::degree_power(int l) const {
  double s = 0.0;
  for (int k = 0; k <= 2 * l; ++k) {
    const double v = at(l, k);
    s += v * v;
  }
  return s;
}

double HarmonicCoeffs::nonzonal_power(int l) const {
  double s = 0.0;
  for (int k = 1; k <= 2 * l; ++k) {
    const double v = at(l, k);
    s += v * v;
  }
  return s;
}

double HarmonicCoeffs::total_power() const {
  double s = 0.0;
  for (double v : c) s += v * v;
  return s;
}

namespace {

// Normalized associated Legendre recurrences with the degree coefficients
// precomputed once per truncation, so the per point work is multiply-add.
class HarmonicEval {
 public:
  explicit HarmonicEval(int lmax) : lmax_(lmax) {
    diag_.resize(lmax + 1, 0.0);
    off_.resize(lmax + 1, 0.0);
    a_.resize(tri(lmax + 1), 0.0);
    b_.resize(tri(lmax + 1), 0.0);
    for (int m = 1; m <= lmax; ++m) diag_[m] = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    for (int m = 0; m <= lmax; ++m) off_[m] = std::sqrt(2.0 * m + 3.0);
    for (int m = 0; m <= lmax; ++m)
      for (int l = m + 2; l <= lmax; ++l) {
        a_[ti(l, m)] = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
        b_[ti(l, m)] = std::sqrt(((static_cast<double>(l) - 1.0) * (l - 1.0) - m * m) /
                                 (4.0 * (static_cast<double>(l) - 1.0) * (l - 1.0) - 1.0));
      }
    col_.resize(lmax + 1, 0.0);
  }

  // y has one slot per (l, m) pair in the HarmonicCoeffs packing.
  void eval(const geo::Vec3& p, std::vector<double>& y) const {
    y.assign(static_cast<std::size_t>(lmax_ + 1) * (lmax_ + 1), 0.0);
    const double z = p.z;
    const double u = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double lam = std::atan2(p.y, p.x);
    const double c1 = std::cos(lam), s1 = std::sin(lam);
    const double sqrt2 = std::sqrt(2.0);

    double bmm = std::sqrt(1.0 / (4.0 * M_PI));
    double cm = 1.0, sm = 0.0;
    for (int m = 0; m <= lmax_; ++m) {
      if (m > 0) {
        bmm *= u * diag_[m];
        const double cn = cm * c1 - sm * s1;
        const double sn = sm * c1 + cm * s1;
        cm = cn;
        sm = sn;
      }
      col_[m] = bmm;
      if (m + 1 <= lmax_) col_[m + 1] = off_[m] * z * bmm;
      for (int l = m + 2; l <= lmax_; ++l)
        col_[l] = a_[ti(l, m)] * (z * col_[l - 1] - b_[ti(l, m)] * col_[l - 2]);
      for (int l = m; l <= lmax_; ++l) {
        const std::size_t base = static_cast<std::size_t>(l) * l;
        if (m == 0)
          y[base] = col_[l];
        else {
          y[base + 2 * m - 1] = sqrt2 * col_[l] * cm;
          y[base + 2 * m] = sqrt2 * col_[l] * sm;
        }
      }
    }
  }

 private:
  static std::size_t tri(int n) { return static_cast<std::size_t>(n) * (n + 1) / 2; }
  std::size_t ti(int l, int m) const { return tri(l) + m; }

  int lmax_;
  std::vector<double> diag_, off_, a_, b_;
  mutable std::vector<double> col_;
};

}  // namespace

void eval_harmonics(const geo::Vec3& p, int lmax, std::vector<double>& y) {
  HarmonicEval(lmax).eval(p, y);
}

HarmonicCoeffs analyze(const Mesh& m, const std::vector<double>& f, int lmax) {
  if (static_cast<int>(f.size()) != m.ncells()) throw std::runtime_error("analyze: size mismatch");
  HarmonicCoeffs out;
  out.lmax = lmax;
  out.c.assign(static_cast<std::size_t>(lmax + 1) * (lmax + 1), 0.0);
  const HarmonicEval eval(lmax);
  const double a2 = m.radius * m.radius;
  std::vector<double> y;
  for (int i = 0; i < m.ncells(); ++i) {
    eval.eval(m.xc[i], y);
    const double w = m.Ac[i] / a2 * f[i];
    for (std::size_t k = 0; k < out.c.size(); ++k) out.c[k] += w * y[k];
  }
  return out;
}

int default_lmax(const Mesh& m) {
  double h = 0.0;
  for (const auto& e : m.edges) h += e.d;
  h /= static_cast<double>(m.edges.size());
  const int l = static_cast<int>(std::floor(M_PI * m.radius / (2.0 * h)));
  return std::min(100, std::max(10, l));
}

std::vector<SpectrumRow> energy_spectrum(const Mesh& m, const std::vector<double>& zeta,
                                         const std::vector<double>& gamma, int lmax) {
  const HarmonicCoeffs zc = analyze(m, zeta, lmax);
  const HarmonicCoeffs gc = analyze(m, gamma, lmax);
  const double a2 = m.radius * m.radius;
  std::vector<SpectrumRow> rows;
  rows.reserve(lmax);
  for (int l = 1; l <= lmax; ++l) {
    SpectrumRow r;
    r.l = l;
    const double zp = zc.degree_power(l);
    r.kinetic = a2 / (2.0 * l * (l + 1.0)) * (zp + gc.degree_power(l));
    r.enstrophy = 0.5 * zp;
    rows.push_back(r);
  }
  return rows;
}

double nonzonal_norm(const Mesh& m, const std::vector<double>& f, int lmax) {
  const HarmonicCoeffs c = analyze(m, f, lmax);
  double s = 0.0;
  for (int l = 1; l <= lmax; ++l) s += c.nonzonal_power(l);
  return std::sqrt(s);
}

double eddy_kinetic_energy(const Mesh& m, const std::vector<double>& zeta,
                           const std::vector<double>& gamma, int lmax) {
  const HarmonicCoeffs zc = analyze(m, zeta, lmax);
  const HarmonicCoeffs gc = analyze(m, gamma, lmax);
  const double a2 = m.radius * m.radius;
  double s = 0.0;
  for (int l = 1; l <= lmax; ++l)
    s += a2 / (2.0 * l * (l + 1.0)) * (zc.nonzonal_power(l) + gc.nonzonal_power(l));
  return s;
}

}  // namespace swe
