#pragma once
#include <vector>

namespace swe {

// Area weighted root mean square: sqrt(sum w f^2 / sum w).
double area_l2(const std::vector<double>& f, const std::vector<double>& w);

// Relative area weighted L2 distance ||f - g|| / ||g||.
double area_rel_l2(const std::vector<double>& f, const std::vector<double>& g,
                   const std::vector<double>& w);

double max_abs(const std::vector<double>& f);

struct ConservationRow {
  double t = 0.0;
  double energy = 0.0;
  double enstrophy = 0.0;
  double mass = 0.0;
  double circulation = 0.0;
  double de_rel = 0.0;
  double dz_rel = 0.0;
};

struct DivergenceRow {
  double t = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

}  // namespace swe
