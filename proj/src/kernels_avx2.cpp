#include "uqsim/kernels.hpp"

#if defined(UQSIM_HAVE_AVX2)

#include <immintrin.h>

// AVX2 variants.  One __m256d holds two interleaved complex doubles
// (re0, im0, re1, im1); a 4x4 row is two registers.  The product of a
// broadcast complex scalar with a complex pair uses the permute/addsub
// idiom, which performs the identical mul/mul/sub(add) rounding sequence
// as the scalar reference, keeping results bit-identical.

namespace uqsim::kern {

namespace {

// (ar + i*ai) * v for two packed complexes in v.
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d v) {
  const __m256d t1 = _mm256_mul_pd(ar, v);
  const __m256d vswap = _mm256_permute_pd(v, 0x5);  // (im0, re0, im1, re1)
  const __m256d t2 = _mm256_mul_pd(ai, vswap);
  return _mm256_addsub_pd(t1, t2);  // even: t1-t2 (re), odd: t1+t2 (im)
}

}  // namespace

void mul4_avx2(Complex* c, const Complex* a, const Complex* b) {
  const double* bp = reinterpret_cast<const double*>(b);
  double* cp = reinterpret_cast<double*>(c);
  for (int i = 0; i < 4; ++i) {
    __m256d acc0 = _mm256_setzero_pd();  // columns j = 0,1
    __m256d acc1 = _mm256_setzero_pd();  // columns j = 2,3
    for (int k = 0; k < 4; ++k) {
      const __m256d ar = _mm256_set1_pd(a[i * 4 + k].real());
      const __m256d ai = _mm256_set1_pd(a[i * 4 + k].imag());
      const __m256d b0 = _mm256_loadu_pd(bp + k * 8);
      const __m256d b1 = _mm256_loadu_pd(bp + k * 8 + 4);
      acc0 = _mm256_add_pd(acc0, cmul_broadcast(ar, ai, b0));
      acc1 = _mm256_add_pd(acc1, cmul_broadcast(ar, ai, b1));
    }
    _mm256_storeu_pd(cp + i * 8, acc0);
    _mm256_storeu_pd(cp + i * 8 + 4, acc1);
  }
}

void axpy4_avx2(Complex* y, double w, const Complex* x) {
  const __m256d wv = _mm256_set1_pd(w);
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  for (int i = 0; i < 32; i += 4) {
    const __m256d xv = _mm256_loadu_pd(xp + i);
    const __m256d yv = _mm256_loadu_pd(yp + i);
    _mm256_storeu_pd(yp + i, _mm256_add_pd(yv, _mm256_mul_pd(wv, xv)));
  }
}

}  // namespace uqsim::kern

#endif  // UQSIM_HAVE_AVX2
