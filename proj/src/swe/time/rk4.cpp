#include "swe/time/rk4.hpp"

#include <algorithm>

#include "swe/core/kernels.hpp"

namespace swe {

Rk4::Rk4(std::size_t n) : k1_(n), k2_(n), k3_(n), k4_(n), tmp_(n) {}

void Rk4::step(const Rhs& rhs, std::vector<double>& y, double t, double dt) {
  const std::size_t n = y.size();
  rhs(y, t, k1_);

  std::copy(y.begin(), y.end(), tmp_.begin());
  kern::axpy(n, 0.5 * dt, k1_.data(), tmp_.data());
  rhs(tmp_, t + 0.5 * dt, k2_);

  std::copy(y.begin(), y.end(), tmp_.begin());
  kern::axpy(n, 0.5 * dt, k2_.data(), tmp_.data());
  rhs(tmp_, t + 0.5 * dt, k3_);

  std::copy(y.begin(), y.end(), tmp_.begin());
  kern::axpy(n, dt, k3_.data(), tmp_.data());
  rhs(tmp_, t + dt, k4_);

  kern::combine4(n, y.data(), dt / 6.0, k1_.data(), dt / 3.0, k2_.data(), dt / 3.0, k3_.data(),
                 dt / 6.0, k4_.data(), y.data());
}

}  // namespace swe
