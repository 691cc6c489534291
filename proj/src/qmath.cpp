#include "uqsim/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uqsim/errors.hpp"
#include "uqsim/kernels.hpp"

namespace uqsim {

namespace {

void require_normalized(const DensityMatrix& rho, const char* op) {
  if (!rho.is_normalized())
    throw std::invalid_argument(std::string(op) + " requires a unit-trace density matrix; normalize explicitly");
}

// Eigenvalues below the matrix-product rounding floor are noise; taking
// their square roots would inject O(1e-8) garbage into trace-sqrt sums.
double noise_floor(const std::vector<double>& descending_values) {
  return std::max(descending_values.front(), 0.0) * 1e-13;
}

}  // namespace

PureState PureState::from_amplitudes(const std::array<Complex, 4>& amp) {
  double n2 = 0.0;
  for (const Complex& z : amp) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("pure-state amplitudes must be finite");
    n2 += std::norm(z);
  }
  if (std::abs(n2 - 1.0) > kNormTol) throw std::invalid_argument("pure state must have unit norm");
  return PureState(amp);
}

PureState bell_phi_theta(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("bell_phi_theta: theta must be finite");
  const double r = 1.0 / std::sqrt(2.0);
  const Complex phase(std::cos(theta), std::sin(theta));
  return PureState::from_amplitudes({Complex(r, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), phase * r});
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("density matrix must be 4x4");
  if (!m.is_hermitian(kHermitianTol)) throw std::invalid_argument("density matrix must be Hermitian");
  const HermitianEig eig = hermitian_eig(m);
  if (eig.values.back() < -kPsdTol) throw std::invalid_argument("density matrix must be positive semidefinite");
  const double tr = m.trace().real();
  if (!(tr > 0.0)) throw std::invalid_argument("density matrix trace must be positive");
  if (tr > 1.0 + kTraceUpperTol) throw std::invalid_argument("density matrix trace must be <= 1");
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) { return DensityMatrix(std::move(m)); }

bool DensityMatrix::is_normalized(double tol) const { return std::abs(trace_real() - 1.0) <= tol; }

DensityMatrix outer_product(const PureState& psi) {
  ComplexMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = psi.amplitude(i) * std::conj(psi.amplitude(j));
  return DensityMatrix::unchecked(std::move(m));
}

DensityMatrix apply_kraus(const ComplexMatrix& k, const DensityMatrix& rho) {
  if (k.rows() != 4 || k.cols() != 4) throw std::invalid_argument("apply_kraus expects a 4x4 operator");
  ComplexMatrix kd(4, 4);
  kern::adjoint4(kd.data(), k.data());
  return DensityMatrix::unchecked(k * rho.matrix() * kd);
}

DensityMatrix normalize(const DensityMatrix& rho) {
  const double tr = rho.trace_real();
  if (tr <= 1e-15) throw DegenerateStateError("cannot normalize a state with near-zero trace");
  return DensityMatrix::unchecked(rho.matrix().scaled(Complex(1.0 / tr, 0.0)));
}

double purity(const DensityMatrix& rho) {
  require_normalized(rho, "purity");
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) s += std::norm(rho.matrix()(i, j));
  return s;
}

double fidelity_to_pure(const DensityMatrix& rho, const PureState& psi) {
  require_normalized(rho, "fidelity_to_pure");
  Complex f(0.0, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      f += std::conj(psi.amplitude(i)) * rho.matrix()(i, j) * psi.amplitude(j);
  return std::clamp(f.real(), 0.0, 1.0);
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_normalized(rho, "uhlmann_fidelity");
  require_normalized(sigma, "uhlmann_fidelity");
  const ComplexMatrix s = sqrtm_psd(rho.matrix());
  const HermitianEig eig = hermitian_eig(s * sigma.matrix() * s);
  const double floor = noise_floor(eig.values);
  double sum = 0.0;
  for (double v : eig.values)
    if (v > floor) sum += std::sqrt(v);
  return std::clamp(sum * sum, 0.0, 1.0);
}

double concurrence(const DensityMatrix& rho) {
  require_normalized(rho, "concurrence");
  // Spin-flipped state: (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y),
  // with the real matrix Y = antidiag(-1, 1, 1, -1).
  ComplexMatrix rho_tilde(4, 4);
  const double y[4] = {-1.0, 1.0, 1.0, -1.0};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      rho_tilde(i, j) = y[i] * y[j] * std::conj(rho.matrix()(3 - i, 3 - j));
  const ComplexMatrix s = sqrtm_psd(rho.matrix());
  const HermitianEig eig = hermitian_eig(s * rho_tilde * s);
  const double floor = noise_floor(eig.values);
  std::array<double, 4> lambda{};
  for (std::size_t i = 0; i < 4; ++i) lambda[i] = eig.values[i] > floor ? std::sqrt(eig.values[i]) : 0.0;
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return std::clamp(c, 0.0, 1.0);
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig expects a square matrix");
  if (!m.is_hermitian(1e-8)) throw std::invalid_argument("hermitian_eig expects a Hermitian matrix");
  const std::size_t n = m.rows();

  // Exact symmetrization removes sub-tolerance asymmetry up front.
  ComplexMatrix a = (m + m.adjoint()).scaled(Complex(0.5, 0.0));
  ComplexMatrix v = ComplexMatrix::identity(n);

  constexpr double kOffTol = 1e-12;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off2 = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) off2 += std::norm(a(p, q));
    if (std::sqrt(off2) < kOffTol) break;
    if (sweep == kMaxSweeps - 1) throw NumericError("Jacobi eigensolver failed to converge");

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double ag = std::abs(g);
        if (ag < 1e-300) continue;
        const Complex phase = g / ag;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * ag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary U: U(p,p)=c, U(p,q)=s, U(q,p)=-s*conj(phase), U(q,q)=c*conj(phase).
        const Complex upq(s, 0.0);
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);
        // Columns: A <- A U, V <- V U.
        for (std::size_t r = 0; r < n; ++r) {
          const Complex acp = a(r, p), acq = a(r, q);
          a(r, p) = c * acp + uqp * acq;
          a(r, q) = upq * acp + uqq * acq;
          const Complex vcp = v(r, p), vcq = v(r, q);
          v(r, p) = c * vcp + uqp * vcq;
          v(r, q) = upq * vcp + uqq * vcq;
        }
        // Rows: A <- U^dagger A.
        for (std::size_t col = 0; col < n; ++col) {
          const Complex arp = a(p, col), arq = a(q, col);
          a(p, col) = c * arp + std::conj(uqp) * arq;
          a(q, col) = std::conj(upq) * arp + std::conj(uqq) * arq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

  HermitianEig out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = diag[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& m) {
  const HermitianEig eig = hermitian_eig(m);
  const std::size_t n = m.rows();
  const double floor = noise_floor(eig.values);
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = eig.values[k] > floor ? std::sqrt(eig.values[k]) : 0.0;
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += root * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return out;
}

PureState principal_eigenvector(const DensityMatrix& rho) {
  const HermitianEig eig = hermitian_eig(rho.matrix());
  std::array<Complex, 4> amp{};
  double n2 = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    amp[i] = eig.vectors(i, 0);
    n2 += std::norm(amp[i]);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& z : amp) z *= inv;
  return PureState::from_amplitudes(amp);
}

}  // namespace uqsim
