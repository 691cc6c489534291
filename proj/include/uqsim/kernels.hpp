#ifndef UQSIM_KERNELS_HPP
#define UQSIM_KERNELS_HPP

#include "uqsim/complex_matrix.hpp"

// Arithmetic kernels for the 4x4 complex-double operations that dominate
// the Monte-Carlo channel and the tomography fixed-point iteration.
//
// Every kernel exists as a scalar reference implementation plus SIMD
// variants (AVX2 on x86-64, NEON on aarch64) selected once at runtime.
// All variants perform the same IEEE operations in the same order, so a
// SIMD kernel is bit-identical to the scalar reference; the equivalence
// suite asserts this exactly.  Kernel translation units are compiled with
// -ffp-contract=off so the compiler cannot fuse the shared mul/add
// sequence into FMA on one path only.

namespace uqsim::kern {

// C = A * B, 4x4 complex, row-major, no aliasing.
using Mul4Fn = void (*)(Complex* c, const Complex* a, const Complex* b);
// Y += w * X over 16 complex entries, real weight.
using Axpy4Fn = void (*)(Complex* y, double w, const Complex* x);

struct Kernels {
  Mul4Fn mul4;
  Axpy4Fn axpy4;
  const char* name;
};

void mul4_scalar(Complex* c, const Complex* a, const Complex* b);
void axpy4_scalar(Complex* y, double w, const Complex* x);

#if defined(UQSIM_HAVE_AVX2)
void mul4_avx2(Complex* c, const Complex* a, const Complex* b);
void axpy4_avx2(Complex* y, double w, const Complex* x);
#endif

#if defined(UQSIM_HAVE_NEON)
void mul4_neon(Complex* c, const Complex* a, const Complex* b);
void axpy4_neon(Complex* y, double w, const Complex* x);
#endif

// Picks the best variant the CPU supports; force_scalar pins the
// reference implementation.
Kernels select(bool force_scalar);

// Process-wide kernel set.  Honors UQSIM_FORCE_SCALAR=1 in the
// environment; resolved once on first use.
const Kernels& active();

// B = A^dagger, 4x4.  Pure data movement, no arithmetic, so it has no
// SIMD variant.
void adjoint4(Complex* b, const Complex* a);

}  // namespace uqsim::kern

#endif
