#ifndef UQSIM_QMATH_HPP
#define UQSIM_QMATH_HPP

#include <array>
#include <vector>

#include "uqsim/complex_matrix.hpp"

// Two-qubit state construction and the entanglement/quality metrics used
// by every other module.  Basis order is (|HH>,|HV>,|VH>,|VV>) with the
// switched signal photon as the left tensor factor.

namespace uqsim {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceUpperTol = 1e-10;
inline constexpr double kNormTol = 1e-12;
// Metric operations insist on unit trace rather than renormalizing, so
// loss bookkeeping stays explicit at call sites.
inline constexpr double kNormalizedTol = 1e-9;

// Normalized four-amplitude pure state.
class PureState {
 public:
  static PureState from_amplitudes(const std::array<Complex, 4>& amp);

  const std::array<Complex, 4>& amplitudes() const { return amp_; }
  Complex amplitude(std::size_t i) const { return amp_[i]; }

 private:
  explicit PureState(const std::array<Complex, 4>& amp) : amp_(amp) {}
  std::array<Complex, 4> amp_;
};

// (|00> + e^{i theta}|11>)/sqrt(2)
PureState bell_phi_theta(double theta);

// 4x4 Hermitian PSD matrix with trace in (0, 1]; sub-normalized states
// are legal, normalization is always explicit.
class DensityMatrix {
 public:
  // Validates shape, Hermiticity, positivity and trace.
  static DensityMatrix from_matrix(const ComplexMatrix& m);
  // For results whose Hermiticity/PSD hold by construction (Kraus
  // conjugation, convex mixtures).  Skips the eigenvalue check and the
  // trace upper bound; crosstalk chains can transiently push the trace
  // slightly above one before normalization.
  static DensityMatrix unchecked(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  double trace_real() const { return m_.trace().real(); }
  bool is_normalized(double tol = kNormalizedTol) const;

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

DensityMatrix outer_product(const PureState& psi);

// K rho K^dagger; output may be sub-normalized (or transiently
// super-normalized for amplifying crosstalk chains).
DensityMatrix apply_kraus(const ComplexMatrix& k, const DensityMatrix& rho);

// Scales to unit trace; throws DegenerateStateError when trace <= 1e-15.
DensityMatrix normalize(const DensityMatrix& rho);

// Tr(rho^2); requires unit trace.
double purity(const DensityMatrix& rho);

// <psi| rho |psi>; requires unit trace.
double fidelity_to_pure(const DensityMatrix& rho, const PureState& psi);

// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2; requires both normalized.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Wootters concurrence, computed through the Hermitian form
// sqrt(rho) rho~ sqrt(rho) so only the Hermitian eigensolver is needed.
double concurrence(const DensityMatrix& rho);

struct HermitianEig {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // eigenvectors as columns, matching order
};

// Cyclic complex Jacobi diagonalization.  Input must be Hermitian within
// 1e-8; converges when the off-diagonal Frobenius norm drops below 1e-12.
HermitianEig hermitian_eig(const ComplexMatrix& m);

// V sqrt(clip(lambda,0)) V^dagger for a Hermitian PSD matrix; eigenvalue
// dips of order -1e-10 from finite precision are clipped to zero.
ComplexMatrix sqrtm_psd(const ComplexMatrix& m);

// Eigenvector of the largest eigenvalue (the pure state closest to rho).
PureState principal_eigenvector(const DensityMatrix& rho);

}  // namespace uqsim

#endif
