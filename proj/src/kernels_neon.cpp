#include "uqsim/kernels.hpp"

#if defined(UQSIM_HAVE_NEON)

#include <arm_neon.h>

// NEON variants.  One float64x2_t holds a single complex double
// (re, im).  The sign vector (-1, +1) turns the cross term into the
// same sub/add pair as the scalar reference; multiplying by exact +-1.0
// is rounding-free, so results stay bit-identical to scalar.

namespace uqsim::kern {

namespace {

inline float64x2_t cmul_broadcast(double ar, double ai, float64x2_t v) {
  const float64x2_t sign = {-1.0, 1.0};
  const float64x2_t t1 = vmulq_n_f64(v, ar);
  const float64x2_t vswap = vextq_f64(v, v, 1);  // (im, re)
  const float64x2_t t2 = vmulq_f64(vmulq_n_f64(vswap, ai), sign);
  return vaddq_f64(t1, t2);  // (ar*re - ai*im, ar*im + ai*re)
}

}  // namespace

void mul4_neon(Complex* c, const Complex* a, const Complex* b) {
  const double* bp = reinterpret_cast<const double*>(b);
  double* cp = reinterpret_cast<double*>(c);
  for (int i = 0; i < 4; ++i) {
    float64x2_t acc[4] = {vdupq_n_f64(0.0), vdupq_n_f64(0.0), vdupq_n_f64(0.0),
                          vdupq_n_f64(0.0)};
    for (int k = 0; k < 4; ++k) {
      const double ar = a[i * 4 + k].real();
      const double ai = a[i * 4 + k].imag();
      for (int j = 0; j < 4; ++j) {
        const float64x2_t bv = vld1q_f64(bp + k * 8 + j * 2);
        acc[j] = vaddq_f64(acc[j], cmul_broadcast(ar, ai, bv));
      }
    }
    for (int j = 0; j < 4; ++j) vst1q_f64(cp + i * 8 + j * 2, acc[j]);
  }
}

void axpy4_neon(Complex* y, double w, const Complex* x) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  for (int i = 0; i < 32; i += 2) {
    const float64x2_t xv = vld1q_f64(xp + i);
    const float64x2_t yv = vld1q_f64(yp + i);
    vst1q_f64(yp + i, vaddq_f64(yv, vmulq_n_f64(xv, w)));
  }
}

}  // namespace uqsim::kern

#endif  // UQSIM_HAVE_NEON
