#include "swe/diag/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace swe {

double area_l2(const std::vector<double>& f, const std::vector<double>& w) {
  if (f.size() != w.size()) throw std::runtime_error("area_l2: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += w[i] * f[i] * f[i];
    den += w[i];
  }
  return std::sqrt(num / den);
}

double area_rel_l2(const std::vector<double>& f, const std::vector<double>& g,
                   const std::vector<double>& w) {
  if (f.size() != g.size() || f.size() != w.size())
    throw std::runtime_error("area_rel_l2: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double e = f[i] - g[i];
    num += w[i] * e * e;
    den += w[i] * g[i] * g[i];
  }
  if (den <= 0.0) throw std::runtime_error("area_rel_l2: zero reference");
  return std::sqrt(num / den);
}

double max_abs(const std::vector<double>& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace swe
