#pragma once
#include <string>
#include <vector>

#include "swe/mesh/mesh.hpp"
#include "swe/ops/assemble.hpp"

namespace swe {

// Convergence harness for the discrete operators. Smooth test fields are
// restricted to mesh locations, pushed through an operator, and compared
// against the restriction of the analytic result. Errors are normalized,
// area weighted L2 plus a plain max norm, so slopes can be fit across
// refinement levels.

double field_remap(const geo::Vec3& p, double radius);
double field_alpha(const geo::Vec3& p, double radius);
double field_beta(const geo::Vec3& p, double radius);
double target_lap_beta(const geo::Vec3& p, double radius);
double target_div_alpha_beta(const geo::Vec3& p, double radius);
double target_curl_alpha_beta(const geo::Vec3& p, double radius);

struct ErrPair {
  double l2 = 0.0;
  double linf = 0.0;
};

ErrPair normalized_error(const std::vector<double>& approx, const std::vector<double>& target,
                         const std::vector<double>& weight);

struct AccuracyRow {
  std::string kind;
  double resolution_km = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

// Mean primal spacing (geodesic distance between adjacent generators), in km.
double mean_spacing_km(const Mesh& m);

// Kinds: every composite kind, plus remap_cv (cell to vertex), remap_vc
// (vertex to cell) and remap_ec (edge to cell). "all" expands to the lot.
std::vector<std::string> expand_kinds(const std::string& csv);

std::vector<AccuracyRow> accuracy_rows(const Mesh& m, const Operators& ops,
                                       const std::vector<std::string>& kinds);

// Least squares slope of log(err) against log(spacing).
double fit_slope(const std::vector<double>& spacing, const std::vector<double>& err);

}  // namespace swe
