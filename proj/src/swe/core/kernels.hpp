#pragma once
#include <cstddef>

// Dense vector kernels used by the iterative solvers and the time stepper.
// Two implementations exist: a scalar reference and an AVX2 variant. Both
// follow the same 8-slot accumulation layout so reductions round identically
// and the dispatched path is bit-for-bit equal to the reference. Keep any
// new kernel honest on that point: no FMA, no reassociation.

namespace swe::kern {

struct Kernels {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(std::size_t, double, const double*, double*);            // y += a*x
  void (*xpay)(std::size_t, const double*, double, double*);            // y = x + a*y
  void (*scale)(std::size_t, double, double*);                          // y *= a
  // y = x + c1*k1 + c2*k2 + c3*k3 + c4*k4 (the RK4 update, fused)
  void (*combine4)(std::size_t, const double*, double, const double*, double,
                   const double*, double, const double*, double, const double*,
                   double*);
};

namespace scalar { extern const Kernels kernels; }
namespace avx2   { extern const Kernels kernels; }   // null pointers if unsupported at build time

bool cpu_has_avx2();
const Kernels& active();          // dispatched once per process
const char* active_name();        // "avx2" or "scalar"

inline double dot(const double* x, const double* y, std::size_t n) { return active().dot(x, y, n); }
inline void axpy(std::size_t n, double a, const double* x, double* y) { active().axpy(n, a, x, y); }
inline void xpay(std::size_t n, const double* x, double a, double* y) { active().xpay(n, x, a, y); }
inline void scale(std::size_t n, double a, double* y) { active().scale(n, a, y); }
inline void combine4(std::size_t n, const double* x, double c1, const double* k1,
                     double c2, const double* k2, double c3, const double* k3,
                     double c4, const double* k4, double* y) {
  active().combine4(n, x, c1, k1, c2, k2, c3, k3, c4, k4, y);
}

}  // namespace swe::kern
