#include "swe/core/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace swe::kern {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

// SWE_KERNELS=scalar forces the reference path (used by the equivalence tests
// to pin down a mismatch if one ever appears).
const Kernels& pick() {
  const char* force = std::getenv("SWE_KERNELS");
  const bool forced_scalar = force && std::strcmp(force, "scalar") == 0;
  if (!forced_scalar && cpu_has_avx2() && avx2::kernels.dot != nullptr)
    return avx2::kernels;
  return scalar::kernels;
}

}  // namespace

const Kernels& active() {
  static const Kernels& k = pick();
  return k;
}

const char* active_name() {
  return &active() == &avx2::kernels ? "avx2" : "scalar";
}

}  // namespace swe::kern
