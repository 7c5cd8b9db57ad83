#include "swe/core/kernels.hpp"

// Compiled with -mavx2 when the compiler supports it. Falls back to a null
// table otherwise so the dispatcher can always link against this TU.
#if defined(__AVX2__)
#include <immintrin.h>

namespace swe::kern::avx2 {
namespace {

// Mirrors the scalar 8-slot layout: acc0 lane k holds slot k, acc1 lane k
// holds slot k+4. Multiplies and adds stay separate instructions so the
// rounding sequence matches the scalar path exactly.
double dot_impl(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t n8 = n - n % 8;
  for (; i < n8; i += 8) {
    const __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    const __m256d p1 = _mm256_mul_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4));
    acc0 = _mm256_add_pd(acc0, p0);
    acc1 = _mm256_add_pd(acc1, p1);
  }
  double s[8];
  _mm256_storeu_pd(s, acc0);
  _mm256_storeu_pd(s + 4, acc1);
  for (; i < n; ++i) s[i % 8] += x[i] * y[i];
  const double l0 = s[0] + s[4];
  const double l1 = s[1] + s[5];
  const double l2 = s[2] + s[6];
  const double l3 = s[3] + s[7];
  return (l0 + l1) + (l2 + l3);
}

void axpy_impl(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  const std::size_t n4 = n - n % 4;
  for (; i < n4; i += 4) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), t));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void xpay_impl(std::size_t n, const double* x, double a, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  const std::size_t n4 = n - n % 4;
  for (; i < n4; i += 4) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(x + i), t));
  }
  for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void scale_impl(std::size_t n, double a, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  const std::size_t n4 = n - n % 4;
  for (; i < n4; i += 4)
    _mm256_storeu_pd(y + i, _mm256_mul_pd(va, _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] *= a;
}

void combine4_impl(std::size_t n, const double* x, double c1, const double* k1,
                   double c2, const double* k2, double c3, const double* k3,
                   double c4, const double* k4, double* y) {
  const __m256d v1 = _mm256_set1_pd(c1);
  const __m256d v2 = _mm256_set1_pd(c2);
  const __m256d v3 = _mm256_set1_pd(c3);
  const __m256d v4 = _mm256_set1_pd(c4);
  std::size_t i = 0;
  const std::size_t n4 = n - n % 4;
  for (; i < n4; i += 4) {
    const __m256d a = _mm256_add_pd(_mm256_mul_pd(v1, _mm256_loadu_pd(k1 + i)),
                                    _mm256_mul_pd(v2, _mm256_loadu_pd(k2 + i)));
    const __m256d b = _mm256_add_pd(_mm256_mul_pd(v3, _mm256_loadu_pd(k3 + i)),
                                    _mm256_mul_pd(v4, _mm256_loadu_pd(k4 + i)));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_add_pd(a, b)));
  }
  for (; i < n; ++i)
    y[i] = x[i] + (c1 * k1[i] + c2 * k2[i]) + (c3 * k3[i] + c4 * k4[i]);
}

}  // namespace

const Kernels kernels = {dot_impl, axpy_impl, xpay_impl, scale_impl, combine4_impl};

}  // namespace swe::kern::avx2

#else

namespace swe::kern::avx2 {
const Kernels kernels = {nullptr, nullptr, nullptr, nullptr, nullptr};
}

#endif
