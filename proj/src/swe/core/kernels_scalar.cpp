#include "swe/core/kernels.hpp"

namespace swe::kern::scalar {
namespace {

// The dot product accumulates into eight interleaved slots (i mod 8) and then
// reduces them pairwise. The AVX2 variant lands every product in the same slot
// and reduces in the same order, which is what makes the two paths bit-equal.
double dot_impl(const double* x, const double* y, std::size_t n) {
  double s[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t i = 0;
  const std::size_t n8 = n - n % 8;
  for (; i < n8; i += 8) {
    s[0] += x[i + 0] * y[i + 0];
    s[1] += x[i + 1] * y[i + 1];
    s[2] += x[i + 2] * y[i + 2];
    s[3] += x[i + 3] * y[i + 3];
    s[4] += x[i + 4] * y[i + 4];
    s[5] += x[i + 5] * y[i + 5];
    s[6] += x[i + 6] * y[i + 6];
    s[7] += x[i + 7] * y[i + 7];
  }
  for (; i < n; ++i) s[i % 8] += x[i] * y[i];
  const double l0 = s[0] + s[4];
  const double l1 = s[1] + s[5];
  const double l2 = s[2] + s[6];
  const double l3 = s[3] + s[7];
  return (l0 + l1) + (l2 + l3);
}

void axpy_impl(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay_impl(std::size_t n, const double* x, double a, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void scale_impl(std::size_t n, double a, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= a;
}

void combine4_impl(std::size_t n, const double* x, double c1, const double* k1,
                   double c2, const double* k2, double c3, const double* k3,
                   double c4, const double* k4, double* y) {
  for (std::size_t i = 0; i < n; ++i)
    y[i] = x[i] + (c1 * k1[i] + c2 * k2[i]) + (c3 * k3[i] + c4 * k4[i]);
}

}  // namespace

const Kernels kernels = {dot_impl, axpy_impl, xpay_impl, scale_impl, combine4_impl};

}  // namespace swe::kern::scalar
