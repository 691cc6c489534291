#include "uqsim/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace uqsim::kern {

namespace {

bool force_scalar_env() {
  const char* v = std::getenv("UQSIM_FORCE_SCALAR");
  return v != nullptr && std::strcmp(v, "0") != 0;
}

}  // namespace

Kernels select(bool force_scalar) {
  if (!force_scalar) {
#if defined(UQSIM_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) {
      return Kernels{mul4_avx2, axpy4_avx2, "avx2"};
    }
#endif
#if defined(UQSIM_HAVE_NEON)
    return Kernels{mul4_neon, axpy4_neon, "neon"};
#endif
  }
  return Kernels{mul4_scalar, axpy4_scalar, "scalar"};
}

const Kernels& active() {
  static const Kernels k = select(force_scalar_env());
  return k;
}

}  // namespace uqsim::kern
