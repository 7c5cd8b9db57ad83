#pragma once
#include <string>
#include <vector>

#include "swe/ops/assemble.hpp"

namespace swe {

// Second-order composite operators built from the letter operators, taking
// two cell fields to a cell field. Kinds:
//   lap              div grad beta (alpha unused)
//   g2_a, g2_b       div(alpha grad beta) via flux sum / circulation sum
//   g3_a, g3_b, g3_c curl-type forms closed through the vertex operators
//   g4_a .. g4_e     curl-type forms opened with vertex-interpolated fields
// Kinds on the same row of the reference table (a/b pairs) are algebraically
// identical matrices; the rest converge to the same analytic target.
std::vector<double> composite_apply(const std::string& kind, const Operators& ops,
                                    const std::vector<double>& alpha,
                                    const std::vector<double>& beta);

const std::vector<std::string>& composite_kinds();

}  // namespace swe
