#include "swe/ops/accuracy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "swe/ops/composite.hpp"

namespace swe {

namespace {
constexpr double kAlphaScale = 1e-8;
}

double field_remap(const geo::Vec3& p, double radius) {
  const double th = geo::lat_of(p), la = geo::lon_of(p);
  const double c = std::cos(th);
  return radius * c * c * c * std::sin(4.0 * la);
}

double field_alpha(const geo::Vec3& p, double /*radius*/) {
  const double th = geo::lat_of(p), la = geo::lon_of(p);
  return kAlphaScale * std::sin(th) * std::cos(la);
}

double field_beta(const geo::Vec3& p, double radius) {
  const double th = geo::lat_of(p), la = geo::lon_of(p);
  const double c = std::cos(th);
  return radius * c * c * c * std::sin(3.0 * la);
}

double target_lap_beta(const geo::Vec3& p, double radius) {
  // beta is a degree three spherical harmonic times radius.
  const double th = geo::lat_of(p), la = geo::lon_of(p);
  const double c = std::cos(th);
  return -(12.0 / radius) * c * c * c * std::sin(3.0 * la);
}

double target_div_alpha_beta(const geo::Vec3& p, double radius) {
  const double th = geo::lat_of(p), la = geo::lon_of(p);
  const double s = std::sin(th), c = std::cos(th);
  return -(3.0 * kAlphaScale / radius) * s * c *
         (std::sin(la) * std::cos(3.0 * la) + 5.0 * c * c * std::cos(la) * std::sin(3.0 * la));
}

double target_curl_alpha_beta(const geo::Vec3& p, double radius) {
  const double th = geo::lat_of(p), la = geo::lon_of(p);
  const double s = std::sin(th), c = std::cos(th);
  return (3.0 * kAlphaScale / radius) * c *
         (s * s * std::sin(la) * std::sin(3.0 * la) - c * c * std::cos(la) * std::cos(3.0 * la));
}

ErrPair normalized_error(const std::vector<double>& approx, const std::vector<double>& target,
                         const std::vector<double>& weight) {
  if (approx.size() != target.size() || approx.size() != weight.size())
    throw std::runtime_error("normalized_error: size mismatch");
  double num2 = 0.0, den2 = 0.0, numi = 0.0, deni = 0.0;
  for (std::size_t i = 0; i < approx.size(); ++i) {
    const double e = approx[i] - target[i];
    num2 += weight[i] * e * e;
    den2 += weight[i] * target[i] * target[i];
    numi = std::max(numi, std::abs(e));
    deni = std::max(deni, std::abs(target[i]));
  }
  if (den2 <= 0.0 || deni <= 0.0) throw std::runtime_error("normalized_error: zero target");
  return {std::sqrt(num2 / den2), numi / deni};
}

double mean_spacing_km(const Mesh& m) {
  double sum = 0.0;
  for (const auto& e : m.edges) sum += e.d;
  return sum / static_cast<double>(m.edges.size()) / 1000.0;
}

std::vector<std::string> expand_kinds(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "all") {
      for (const auto& k : composite_kinds()) out.push_back(k);
      out.push_back("remap_cv");
      out.push_back("remap_vc");
      out.push_back("remap_ec");
    } else {
      out.push_back(item);
    }
  }
  return out;
}

namespace {

template <class F>
std::vector<double> sample(const std::vector<geo::Vec3>& pts, double radius, F&& f) {
  std::vector<double> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f(pts[i], radius);
  return out;
}

AccuracyRow remap_row(const std::string& kind, const Mesh& m, const Operators& ops, double res) {
  const double R = m.radius;
  if (kind == "remap_cv") {
    const auto at_cell = sample(m.xc, R, field_remap);
    const auto truth = sample(m.xv, R, field_remap);
    const auto err = normalized_error(ops.N.mul(at_cell), truth, m.Av);
    return {kind, res, err.l2, err.linf};
  }
  if (kind == "remap_vc") {
    const auto at_vert = sample(m.xv, R, field_remap);
    const auto truth = sample(m.xc, R, field_remap);
    const auto err = normalized_error(ops.M.mul(at_vert), truth, m.Ac);
    return {kind, res, err.l2, err.linf};
  }
  if (kind == "remap_ec") {
    std::vector<double> at_edge(m.edges.size());
    for (std::size_t e = 0; e < m.edges.size(); ++e) at_edge[e] = field_remap(m.edges[e].m, R);
    const auto truth = sample(m.xc, R, field_remap);
    const auto err = normalized_error(ops.Ecell.mul(at_edge), truth, m.Ac);
    return {kind, res, err.l2, err.linf};
  }
  throw std::runtime_error("accuracy_rows: unknown kind " + kind);
}

}  // namespace

std::vector<AccuracyRow> accuracy_rows(const Mesh& m, const Operators& ops,
                                       const std::vector<std::string>& kinds) {
  const double res = mean_spacing_km(m);
  const double R = m.radius;
  const auto alpha = sample(m.xc, R, field_alpha);
  const auto beta = sample(m.xc, R, field_beta);

  std::vector<AccuracyRow> rows;
  for (const auto& kind : kinds) {
    if (kind.rfind("remap_", 0) == 0) {
      rows.push_back(remap_row(kind, m, ops, res));
      continue;
    }
    std::vector<double> truth;
    if (kind == "lap")
      truth = sample(m.xc, R, target_lap_beta);
    else if (kind == "g2_a" || kind == "g2_b")
      truth = sample(m.xc, R, target_div_alpha_beta);
    else
      truth = sample(m.xc, R, target_curl_alpha_beta);
    const auto err = normalized_error(composite_apply(kind, ops, alpha, beta), truth, m.Ac);
    rows.push_back({kind, res, err.l2, err.linf});
  }
  return rows;
}

double fit_slope(const std::vector<double>& spacing, const std::vector<double>& err) {
  if (spacing.size() != err.size() || spacing.size() < 2)
    throw std::runtime_error("fit_slope: need at least two points");
  const auto n = static_cast<double>(spacing.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < spacing.size(); ++i) {
    sx += std::log(spacing[i]);
    sy += std::log(err[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < spacing.size(); ++i) {
    const double dx = std::log(spacing[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace swe
