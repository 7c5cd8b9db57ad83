#pragma once
#include <string>
#include <vector>

#include "swe/dyn/state.hpp"
#include "swe/mesh/mesh.hpp"
#include "swe/ops/assemble.hpp"
#include "swe/time/config.hpp"

namespace swe {

struct CaseFields {
  State state;
  std::vector<double> bottom;  // empty means flat
};

// swstc2: steady zonal flow in geostrophic balance, valid on closed and
//         bounded meshes (the flow is tangent to an equatorial boundary).
// swstc5: zonal flow impinging on an isolated mountain, closed meshes.
// galewsky: barotropic jet, balanced by numerical integration; the
//         galewsky_perturbed flag adds the thickness bump that trips the
//         instability. Closed meshes.
// gyre:   single vortex in a bounded basin of uniform depth, scaled to a
//         peak edge speed of 0.8 m/s.
CaseFields init_case(const std::string& name, const Mesh& m, const Operators& ops,
                     const RunConfig& cfg);

const std::vector<std::string>& case_names();

}  // namespace swe
