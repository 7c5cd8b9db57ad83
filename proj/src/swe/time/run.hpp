#pragma once
#include <string>
#include <vector>

#include "swe/cases/cases.hpp"
#include "swe/diag/norms.hpp"
#include "swe/dyn/state.hpp"
#include "swe/mesh/mesh.hpp"
#include "swe/ops/assemble.hpp"
#include "swe/time/config.hpp"

namespace swe {

struct RunResult {
  State state;
  double t = 0.0;
  int steps = 0;
  std::vector<ConservationRow> conservation;
  std::vector<DivergenceRow> divergence;
  long long inner_iters = 0;
  int max_outer = 0;
};

// Integrates a named case. With a nonempty out_dir the artifact set is
// written there: manifest.txt, conservation.csv, divergence.csv, snapshot
// and optional spectrum files, plus timings.txt (the one file whose content
// is not deterministic).
RunResult run_case(const Mesh& m, const Operators& ops, const RunConfig& cfg,
                   const std::string& case_name, const std::string& out_dir);

// Same loop from explicit initial fields (tests and the convergence suite).
RunResult run_from_state(const Mesh& m, const Operators& ops, const RunConfig& cfg,
                         const CaseFields& fields, const std::string& case_label,
                         const std::string& out_dir);

}  // namespace swe
