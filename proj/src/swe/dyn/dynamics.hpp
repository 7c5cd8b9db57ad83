#pragma once
#include <string>
#include <vector>

#include "swe/dyn/state.hpp"
#include "swe/mesh/mesh.hpp"
#include "swe/ops/assemble.hpp"

namespace swe {

// Vorticity / divergence formulations. Both conserve total energy exactly in
// time continuous form; the second one conserves potential enstrophy too.
enum class Scheme { energy, energy_enstrophy };
Scheme scheme_from_string(const std::string& name);
std::string scheme_name(Scheme s);

struct ModelConfig {
  double gravity = 9.80616;
  double omega = 7.292e-5;
  Scheme scheme = Scheme::energy;
};

struct Tendency {
  std::vector<double> phi;
  std::vector<double> zeta;
  std::vector<double> gamma;
};

struct EdgeVelocity {
  std::vector<double> normal;
  std::vector<double> tangential;
};

// Evaluates the spatial discretization: curl and divergence dynamics driven
// by the mass flux potentials psi and chi (obtained from the elliptic solve
// of the same state). Every term is built from the shared operator set, and
// the vertex contributions ride on exactly the edges the operators support,
// which is what makes the conservation identities close.
class Model {
 public:
  Model(const Mesh& m, const Operators& ops, ModelConfig cfg, std::vector<double> bottom = {});

  Tendency tendencies(const State& s, const std::vector<double>& psi,
                      const std::vector<double>& chi) const;

  // Bernoulli function per cell: the thickness derivative of the energy,
  // divided by cell area.
  std::vector<double> bernoulli(const State& s, const std::vector<double>& psi,
                                const std::vector<double>& chi) const;

  std::vector<double> potential_vorticity(const State& s) const;

  double energy(const State& s, const std::vector<double>& psi,
                const std::vector<double>& chi) const;
  double mass(const State& s) const;
  double circulation(const State& s) const;
  double enstrophy(const State& s) const;

  EdgeVelocity edge_velocity(const State& s, const std::vector<double>& psi,
                             const std::vector<double>& chi) const;

  const std::vector<double>& coriolis() const { return f_; }
  const std::vector<double>& bottom() const { return b_; }
  const Mesh& mesh() const { return m_; }
  const Operators& ops() const { return ops_; }
  const ModelConfig& config() const { return cfg_; }

 private:
  struct EdgeFields;
  EdgeFields edge_fields(const std::vector<double>& psi, const std::vector<double>& chi) const;

  const Mesh& m_;
  const Operators& ops_;
  ModelConfig cfg_;
  std::vector<double> f_;
  std::vector<double> b_;
};

}  // namespace swe
