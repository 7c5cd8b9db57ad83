#include "swe/ops/composite.hpp"

#include <stdexcept>

namespace swe {

namespace {

std::vector<double> hadamard(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

std::vector<double> scaled(std::vector<double> a, double c) {
  for (double& x : a) x *= c;
  return a;
}

}  // namespace

std::vector<double> composite_apply(const std::string& kind, const Operators& ops,
                                    const std::vector<double>& alpha,
                                    const std::vector<double>& beta) {
  if (kind == "lap") return ops.D.mul(ops.G.mul(beta));

  const std::vector<double> ahat = ops.Ahat.mul(alpha);
  const std::vector<double> bhat = ops.Ahat.mul(beta);

  if (kind == "g2_a") return ops.D.mul(hadamard(ahat, ops.G.mul(beta)));
  if (kind == "g2_b") return ops.C.mul(hadamard(ahat, ops.S.mul(beta)));

  if (kind == "g3_a") return ops.M.mul(ops.Ch.mul(hadamard(ahat, ops.G.mul(beta))));
  if (kind == "g3_b") return scaled(ops.M.mul(ops.Dh.mul(hadamard(ahat, ops.S.mul(beta)))), -1.0);
  if (kind == "g3_c") return ops.M.mul(ops.Dh.mul(hadamard(bhat, ops.S.mul(alpha))));

  if (kind == "g4_a") return ops.C.mul(hadamard(ahat, ops.Gh.mul(ops.N.mul(beta))));
  if (kind == "g4_b") return scaled(ops.D.mul(hadamard(ahat, ops.Sh.mul(ops.N.mul(beta)))), -1.0);
  if (kind == "g4_c") return ops.D.mul(hadamard(bhat, ops.Sh.mul(ops.N.mul(alpha))));
  if (kind == "g4_d")
    return scaled(ops.Ecell.mul(hadamard(ops.Sh.mul(ops.N.mul(beta)), ops.G.mul(alpha))), -2.0);
  if (kind == "g4_e")
    return scaled(ops.Ecell.mul(hadamard(ops.Sh.mul(ops.N.mul(alpha)), ops.G.mul(beta))), 2.0);

  throw std::runtime_error("composite_apply: unknown kind " + kind);
}

const std::vector<std::string>& composite_kinds() {
  static const std::vector<std::string> kinds = {"lap",  "g2_a", "g2_b", "g3_a", "g3_b", "g3_c",
                                                 "g4_a", "g4_b", "g4_c", "g4_d", "g4_e"};
  return kinds;
}

}  // namespace swe
