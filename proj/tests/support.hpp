#ifndef UQSIM_TESTS_SUPPORT_HPP
#define UQSIM_TESTS_SUPPORT_HPP

#include <array>
#include <cmath>
#include <numbers>

#include "uqsim/qmath.hpp"
#include "uqsim/rng.hpp"

// Shared generators and naive reference math for the test suites.  The
// reference implementations here deliberately avoid the kernel path so
// library results are checked against an independent route.

namespace uqsim::test {

inline ComplexMatrix mat4(const std::array<std::array<Complex, 4>, 4>& rows) {
  ComplexMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = rows[i][j];
  return m;
}

inline ComplexMatrix mat2(const std::array<std::array<Complex, 2>, 2>& rows) {
  ComplexMatrix m(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = rows[i][j];
  return m;
}

// Plain triple-loop product, independent of the kernel dispatch.
inline ComplexMatrix naive_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

inline ComplexMatrix random_matrix(SplitMix64& rng, std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(gaussian(rng), gaussian(rng));
  return m;
}

// Random full-rank density matrix via G G^dagger / Tr.
inline DensityMatrix random_density(std::uint64_t seed) {
  SplitMix64 rng = substream(seed, 0);
  const ComplexMatrix g = random_matrix(rng, 4);
  ComplexMatrix rho = naive_mul(g, g.adjoint());
  return normalize(DensityMatrix::unchecked(std::move(rho)));
}

inline PureState random_pure(std::uint64_t seed) {
  SplitMix64 rng = substream(seed, 1);
  std::array<Complex, 4> amp;
  double n2 = 0.0;
  for (auto& z : amp) {
    z = Complex(gaussian(rng), gaussian(rng));
    n2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : amp) z *= inv;
  return PureState::from_amplitudes(amp);
}

// Random unitary by Gram-Schmidt on a Gaussian matrix.
inline ComplexMatrix random_unitary(SplitMix64& rng, std::size_t n) {
  ComplexMatrix m = random_matrix(rng, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex proj(0.0, 0.0);
      for (std::size_t r = 0; r < n; ++r) proj += std::conj(m(r, prev)) * m(r, c);
      for (std::size_t r = 0; r < n; ++r) m(r, c) -= proj * m(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(m(r, c));
    const double inv = 1.0 / std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) m(r, c) *= inv;
  }
  return m;
}

// p |Phi^-><Phi^-| + (1-p) I/4
inline DensityMatrix werner(double p) {
  const DensityMatrix bell = outer_product(bell_phi_theta(std::numbers::pi));
  ComplexMatrix m = bell.matrix().scaled(Complex(p, 0.0));
  for (std::size_t i = 0; i < 4; ++i) m(i, i) += Complex((1.0 - p) / 4.0, 0.0);
  return DensityMatrix::unchecked(std::move(m));
}

}  // namespace uqsim::test

#endif
