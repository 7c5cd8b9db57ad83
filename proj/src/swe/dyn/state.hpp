#pragma once
#include <vector>

namespace swe {

// Prognostic cell fields: fluid thickness, velocity curl, velocity
// divergence. The mass flux potentials are diagnostic and come out of the
// elliptic solve.
struct State {
  std::vector<double> phi;
  std::vector<double> zeta;
  std::vector<double> gamma;
};

}  // namespace swe
