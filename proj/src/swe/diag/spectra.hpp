#pragma once
#include <vector>

#include "swe/mesh/mesh.hpp"

namespace swe {

// Real orthonormal spherical harmonic analysis of cell fields, by direct
// area weighted projection: c_lm = sum_i (A_i / a^2) f_i Y_lm(x_i). With the
// orthonormal basis, sum_i A_i f_i^2 / a^2 is close to sum c_lm^2 for well
// resolved fields (discrete Parseval).

// Coefficients packed per degree: for l in 0..lmax, the (2l+1) values are
// [m=0, m=1 cos, m=1 sin, m=2 cos, m=2 sin, ...].
struct HarmonicCoeffs {
  int lmax = 0;
  std::vector<double> c;

  double& at(int l, int k) { return c[static_cast<std::size_t>(l) * l + k]; }
  double at(int l, int k) const { return c[static_cast<std::size_t>(l) * l + k]; }

  double degree_power(int l) const;    // sum over all m of c^2
  double nonzonal_power(int l) const;  // sum over m != 0 of c^2
  double total_power() const;
};

HarmonicCoeffs analyze(const Mesh& m, const std::vector<double>& f, int lmax);

// Evaluate Y_lm at one unit point, same packing as HarmonicCoeffs (used by
// the transform and by tests).
void eval_harmonics(const geo::Vec3& p, int lmax, std::vector<double>& y);

// Truncation for which the mesh still resolves the basis comfortably.
int default_lmax(const Mesh& m);

struct SpectrumRow {
  int l = 0;
  double kinetic = 0.0;     // a^2 / (2 l (l+1)) * sum_m (|zeta|^2 + |gamma|^2)
  double enstrophy = 0.0;   // 1/2 sum_m |zeta|^2
};

// Kinetic energy and (vorticity based) enstrophy spectra from the curl and
// divergence fields, degrees 1..lmax.
std::vector<SpectrumRow> energy_spectrum(const Mesh& m, const std::vector<double>& zeta,
                                         const std::vector<double>& gamma, int lmax);

// Departure from zonal symmetry: sqrt of the m != 0 power of a field.
double nonzonal_norm(const Mesh& m, const std::vector<double>& f, int lmax);

// Eddy kinetic energy: the kinetic spectrum restricted to m != 0.
double eddy_kinetic_energy(const Mesh& m, const std::vector<double>& zeta,
                           const std::vector<double>& gamma, int lmax);

}  // namespace swe
