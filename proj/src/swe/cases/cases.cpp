#include "swe/cases/cases.hpp"

#include <cmath>

namespace swe {

namespace {

CaseFields init_tc2(const Mesh& m, const RunConfig& cfg) {
  const double a = cfg.radius;
  const double u0 = 2.0 * M_PI * a / (12.0 * 86400.0);
  const double gh0 = 2.94e4;
  const double coef = a * cfg.omega * u0 + 0.5 * u0 * u0;

  CaseFields cf;
  cf.state.phi.resize(m.ncells());
  cf.state.zeta.resize(m.ncells());
  cf.state.gamma.assign(m.ncells(), 0.0);
  for (int i = 0; i < m.ncells(); ++i) {
    const double z = m.xc[i].z;
    cf.state.phi[i] = (gh0 - coef * z * z) / cfg.gravity;
    cf.state.zeta[i] = 2.0 * u0 * z / a;
  }
  return cf;
}

CaseFields init_tc5(const Mesh& m, const RunConfig& cfg) {
  if (m.bounded()) throw config_error("swstc5 needs a closed mesh");
  const double a = cfg.radius;
  const double u0 = 20.0;
  const double h0 = 5960.0;
  const double coef = (a * cfg.omega * u0 + 0.5 * u0 * u0) / cfg.gravity;
  const double rad = M_PI / 9.0;
  const double lamc = -M_PI / 2.0, thc = M_PI / 6.0;

  CaseFields cf;
  cf.state.phi.resize(m.ncells());
  cf.state.zeta.resize(m.ncells());
  cf.state.gamma.assign(m.ncells(), 0.0);
  cf.bottom.resize(m.ncells());
  for (int i = 0; i < m.ncells(); ++i) {
    const double th = geo::lat_of(m.xc[i]);
    double dl = geo::lon_of(m.xc[i]) - lamc;
    if (dl > M_PI) dl -= 2.0 * M_PI;
    if (dl < -M_PI) dl += 2.0 * M_PI;
    const double r = std::min(rad, std::sqrt(dl * dl + (th - thc) * (th - thc)));
    const double b = 2000.0 * (1.0 - r / rad);
    const double z = m.xc[i].z;
    cf.bottom[i] = b;
    cf.state.phi[i] = h0 - coef * z * z - b;
    cf.state.zeta[i] = 2.0 * u0 * z / a;
  }
  return cf;
}

struct JetProfile {
  double theta0, theta1, en, umax;

  double u(double th) const {
    if (th <= theta0 || th >= theta1) return 0.0;
    return umax / en * std::exp(1.0 / ((th - theta0) * (th - theta1)));
  }

  double du(double th) const {
    if (th <= theta0 || th >= theta1) return 0.0;
    const double g = (th - theta0) * (th - theta1);
    return -u(th) * (2.0 * th - theta0 - theta1) / (g * g);
  }
};

CaseFields init_galewsky(const Mesh& m, const RunConfig& cfg) {
  if (m.bounded()) throw config_error("galewsky needs a closed mesh");
  const double a = cfg.radius;
  JetProfile jet;
  jet.umax = 80.0;
  jet.theta0 = M_PI / 7.0;
  jet.theta1 = M_PI / 2.0 - jet.theta0;
  const double dth = jet.theta1 - jet.theta0;
  jet.en = std::exp(-4.0 / (dth * dth));

  // Balance g h' = -a u (f + u tan(theta) / a) by cumulative trapezoid on a
  // fine latitude table, then shift to the target mean depth.
  const int n = 400000;
  const double step = M_PI / n;
  std::vector<double> gh(n + 1, 0.0);
  const auto integrand = [&](double th) {
    const double u = jet.u(th);
    if (u == 0.0) return 0.0;
    return -a * u * (2.0 * cfg.omega * std::sin(th) + u * std::tan(th) / a);
  };
  double prev = integrand(-M_PI / 2.0);
  for (int k = 0; k < n; ++k) {
    const double th = -M_PI / 2.0 + step * (k + 1);
    const double cur = integrand(th);
    gh[k + 1] = gh[k] + 0.5 * (prev + cur) * step;
    prev = cur;
  }

  double mean_num = 0.0, mean_den = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double th = -M_PI / 2.0 + step * k;
    const double w = std::cos(th) * (k == 0 || k == n ? 0.5 : 1.0);
    mean_num += w * gh[k];
    mean_den += w;
  }
  const double shift = 10000.0 - mean_num / mean_den / cfg.gravity;

  const auto thickness = [&](double th) {
    const double pos = (th + M_PI / 2.0) / step;
    int k = static_cast<int>(std::floor(pos));
    k = std::max(0, std::min(n - 1, k));
    const double frac = pos - k;
    return (gh[k] * (1.0 - frac) + gh[k + 1] * frac) / cfg.gravity + shift;
  };

  CaseFields cf;
  cf.state.phi.resize(m.ncells());
  cf.state.zeta.resize(m.ncells());
  cf.state.gamma.assign(m.ncells(), 0.0);
  const double alpha = 1.0 / 3.0, beta = 1.0 / 15.0, theta2 = M_PI / 4.0;
  for (int i = 0; i < m.ncells(); ++i) {
    const double th = geo::lat_of(m.xc[i]);
    const double la = geo::lon_of(m.xc[i]);
    double h = thickness(th);
    if (cfg.galewsky_perturbed) {
      const double d1 = la / alpha;
      const double d2 = (theta2 - th) / beta;
      h += 120.0 * std::cos(th) * std::exp(-d1 * d1) * std::exp(-d2 * d2);
    }
    cf.state.phi[i] = h;
    cf.state.zeta[i] = jet.u(th) * std::tan(th) / a - jet.du(th) / a;
  }
  return cf;
}

CaseFields init_gyre(const Mesh& m, const Operators& ops, const RunConfig& cfg) {
  if (!m.bounded()) throw config_error("gyre needs a bounded mesh");
  const double thc = 0.5088, lamc = -1.1, dth = 0.08688, dlam = 0.15;
  const double phi0 = cfg.gyre_mean_depth;

  std::vector<double> psi(m.ncells(), 0.0);
  for (int i = m.nb; i < m.ncells(); ++i) {
    const double th = geo::lat_of(m.xc[i]);
    const double la = geo::lon_of(m.xc[i]);
    const double d = std::sqrt((th - thc) * (th - thc) / (dth * dth) +
                               (la - lamc) * (la - lamc) / (dlam * dlam));
    psi[i] = std::exp(-d * d) * (1.0 - std::tanh(20.0 * (d - 1.5)));
  }

  // Scale the raw pattern so the fastest edge runs at 0.8 m/s.
  const auto gpsi = ops.G.mul(psi);
  const auto snpsi = ops.Sh.mul(ops.N.mul(psi));
  double smax = 0.0;
  for (int e = 0; e < m.nedges(); ++e)
    smax = std::max(smax, std::hypot(gpsi[e], snpsi[e]) / phi0);
  const double scale = 0.8 / smax;

  std::vector<double> flux(m.nedges());
  for (int e = 0; e < m.nedges(); ++e) flux[e] = scale * gpsi[e] / phi0;

  CaseFields cf;
  cf.state.phi.assign(m.ncells(), phi0);
  cf.state.zeta = ops.C.mul(flux);
  cf.state.gamma.assign(m.ncells(), 0.0);
  return cf;
}

}  // namespace

CaseFields init_case(const std::string& name, const Mesh& m, const Operators& ops,
                     const RunConfig& cfg) {
  if (name == "swstc2") return init_tc2(m, cfg);
  if (name == "swstc5") return init_tc5(m, cfg);
  if (name == "galewsky") return init_galewsky(m, cfg);
  if (name == "gyre") return init_gyre(m, ops, cfg);
  throw config_error("unknown case: " + name);
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names = {"swstc2", "swstc5", "galewsky", "gyre"};
  return names;
}

}  // namespace swe
