#include "uqsim/kernels.hpp"

// Reference kernels.  The complex product is expanded by hand so the
// rounding sequence per output lane is exactly: two multiplies, one
// add/sub for the product, one add into the accumulator.  The SIMD
// variants reproduce that sequence lane for lane.

namespace uqsim::kern {

void mul4_scalar(Complex* c, const Complex* a, const Complex* b) {
  for (int i = 0; i < 4; ++i) {
    double acc_re[4] = {0.0, 0.0, 0.0, 0.0};
    double acc_im[4] = {0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < 4; ++k) {
      const double ar = a[i * 4 + k].real();
      const double ai = a[i * 4 + k].imag();
      for (int j = 0; j < 4; ++j) {
        const double br = b[k * 4 + j].real();
        const double bi = b[k * 4 + j].imag();
        const double pre = ar * br - ai * bi;
        const double pim = ar * bi + ai * br;
        acc_re[j] += pre;
        acc_im[j] += pim;
      }
    }
    for (int j = 0; j < 4; ++j) c[i * 4 + j] = Complex(acc_re[j], acc_im[j]);
  }
}

void axpy4_scalar(Complex* y, double w, const Complex* x) {
  for (int i = 0; i < 16; ++i) {
    y[i] = Complex(y[i].real() + w * x[i].real(), y[i].imag() + w * x[i].imag());
  }
}

void adjoint4(Complex* b, const Complex* a) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b[i * 4 + j] = std::conj(a[j * 4 + i]);
}

}  // namespace uqsim::kern
