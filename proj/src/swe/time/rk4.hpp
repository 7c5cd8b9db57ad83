#pragma once
#include <functional>
#include <vector>

namespace swe {

// Classical fourth order Runge Kutta on a flat state vector, with persistent
// stage storage so long runs do not churn the allocator.
class Rk4 {
 public:
  using Rhs = std::function<void(const std::vector<double>&, double, std::vector<double>&)>;

  explicit Rk4(std::size_t n);
  void step(const Rhs& rhs, std::vector<double>& y, double t, double dt);

 private:
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace swe
