#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "uqsim/errors.hpp"
#include "uqsim/qmath.hpp"

#include "support.hpp"

using namespace uqsim;
using test::werner;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix maximally_mixed() {
  ComplexMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = Complex(0.25, 0.0);
  return DensityMatrix::unchecked(std::move(m));
}

}  // namespace

TEST_CASE("bell_phi_theta produces the expected amplitude patterns") {
  const double r = 1.0 / std::sqrt(2.0);

  const PureState phi_minus = bell_phi_theta(kPi);
  CHECK(std::abs(phi_minus.amplitude(0) - Complex(r, 0.0)) < 1e-15);
  CHECK(std::abs(phi_minus.amplitude(1)) == 0.0);
  CHECK(std::abs(phi_minus.amplitude(2)) == 0.0);
  CHECK(std::abs(phi_minus.amplitude(3) - Complex(-r, 0.0)) < 1e-15);

  const PureState phi_plus = bell_phi_theta(0.0);
  CHECK(std::abs(phi_plus.amplitude(3) - Complex(r, 0.0)) < 1e-15);

  // Phase used in the thermo-optic switching run.
  const double theta = -0.49 * kPi;
  const PureState arbitrary = bell_phi_theta(theta);
  CHECK(std::abs(arbitrary.amplitude(3) - Complex(std::cos(theta) * r, std::sin(theta) * r)) < 1e-15);

  CHECK_THROWS_AS(bell_phi_theta(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(bell_phi_theta(INFINITY), std::invalid_argument);
}

TEST_CASE("outer_product forms rank-1 projectors") {
  const DensityMatrix rho = outer_product(bell_phi_theta(kPi));
  CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho.matrix()(3, 3).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho.matrix()(0, 3).real() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(rho.matrix()(3, 0).real() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(std::abs(rho.matrix()(1, 1)) == 0.0);
  CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-13));

  const DensityMatrix ground = outer_product(PureState::from_amplitudes(
      {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)}));
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(ground.matrix()(i, i).real() == (i == 0 ? 1.0 : 0.0));

  const DensityMatrix quarter = outer_product(bell_phi_theta(kPi / 2.0));
  CHECK(std::abs(quarter.matrix()(0, 3) - Complex(0.0, -0.5)) < 1e-15);
  CHECK(std::abs(quarter.matrix()(3, 0) - Complex(0.0, 0.5)) < 1e-15);
}

TEST_CASE("tensor2 follows the signal-left convention") {
  const ComplexMatrix eye2 = ComplexMatrix::identity(2);
  CHECK(tensor2(eye2, eye2).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);

  ComplexMatrix diag(2, 2);
  diag(0, 0) = Complex(2.0, 0.0);
  diag(1, 1) = Complex(3.0, 0.0);
  const ComplexMatrix t = tensor2(diag, eye2);
  CHECK(t(0, 0).real() == 2.0);
  CHECK(t(1, 1).real() == 2.0);
  CHECK(t(2, 2).real() == 3.0);
  CHECK(t(3, 3).real() == 3.0);

  // Pauli-X on the signal maps |Phi+> to |Psi+>.
  ComplexMatrix pauli_x(2, 2);
  pauli_x(0, 1) = pauli_x(1, 0) = Complex(1.0, 0.0);
  const DensityMatrix mapped = apply_kraus(tensor2(pauli_x, eye2), outer_product(bell_phi_theta(0.0)));
  const double r = 1.0 / std::sqrt(2.0);
  const PureState psi_plus = PureState::from_amplitudes(
      {Complex(0.0, 0.0), Complex(r, 0.0), Complex(r, 0.0), Complex(0.0, 0.0)});
  CHECK(mapped.matrix().max_abs_diff(outer_product(psi_plus).matrix()) < 1e-14);

  CHECK_THROWS_AS(tensor2(ComplexMatrix::identity(4), eye2), std::invalid_argument);
}

TEST_CASE("apply_kraus basics") {
  const DensityMatrix rho = outer_product(bell_phi_theta(kPi));
  CHECK(apply_kraus(ComplexMatrix::identity(4), rho).matrix().max_abs_diff(rho.matrix()) == 0.0);

  const ComplexMatrix zero(4, 4);
  CHECK(apply_kraus(zero, rho).matrix().frobenius_norm() == 0.0);

  const ComplexMatrix half = ComplexMatrix::identity(4).scaled(Complex(0.5, 0.0));
  CHECK(apply_kraus(half, rho).trace_real() == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("apply_kraus preserves positivity and Hermiticity") {
  SplitMix64 rng = substream(21, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const ComplexMatrix k = test::random_matrix(rng, 4);
    const DensityMatrix rho = test::random_density(1000 + trial);
    const DensityMatrix out = apply_kraus(k, rho);
    CHECK(out.matrix().is_hermitian(1e-10));
    const HermitianEig eig = hermitian_eig(out.matrix());
    CHECK(eig.values.back() > -1e-10);
  }
}

TEST_CASE("normalize rescales and rejects vanishing traces") {
  const DensityMatrix rho = outer_product(bell_phi_theta(kPi));
  const DensityMatrix halved = DensityMatrix::unchecked(rho.matrix().scaled(Complex(0.5, 0.0)));
  CHECK(normalize(halved).matrix().max_abs_diff(rho.matrix()) < 1e-15);
  CHECK(normalize(rho).matrix().max_abs_diff(rho.matrix()) < 1e-15);

  ComplexMatrix corners(4, 4);
  corners(0, 0) = corners(3, 3) = Complex(0.2, 0.0);
  const DensityMatrix scaled = normalize(DensityMatrix::unchecked(std::move(corners)));
  CHECK(scaled.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));

  const DensityMatrix tiny = DensityMatrix::unchecked(rho.matrix().scaled(Complex(1e-16, 0.0)));
  CHECK_THROWS_AS(normalize(tiny), DegenerateStateError);
}

TEST_CASE("purity of pure, mixed, and Werner states") {
  CHECK(purity(outer_product(bell_phi_theta(kPi))) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(purity(maximally_mixed()) == doctest::Approx(0.25).epsilon(1e-14));
  // Tr(W^2) = p^2 + p(1-p)/2 + (1-p)^2/4 at p = 0.8.
  CHECK(purity(werner(0.8)) == doctest::Approx(0.73).epsilon(1e-12));

  const DensityMatrix sub = DensityMatrix::unchecked(maximally_mixed().matrix().scaled(Complex(0.5, 0.0)));
  CHECK_THROWS_AS(purity(sub), std::invalid_argument);
}

TEST_CASE("fidelity_to_pure") {
  const PureState bell = bell_phi_theta(kPi);
  CHECK(fidelity_to_pure(outer_product(bell), bell) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(fidelity_to_pure(maximally_mixed(), bell) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(fidelity_to_pure(werner(0.9), bell) == doctest::Approx(0.925).epsilon(1e-12));

  const DensityMatrix sub = DensityMatrix::unchecked(maximally_mixed().matrix().scaled(Complex(0.5, 0.0)));
  CHECK_THROWS_AS(fidelity_to_pure(sub, bell), std::invalid_argument);
}

TEST_CASE("uhlmann_fidelity identities and reductions") {
  const DensityMatrix bell = outer_product(bell_phi_theta(kPi));
  CHECK(uhlmann_fidelity(bell, bell) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(uhlmann_fidelity(bell, maximally_mixed()) == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(uhlmann_fidelity(werner(0.5), bell) == doctest::Approx(0.625).epsilon(1e-10));

  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = test::random_density(2000 + trial);
    const DensityMatrix sigma = test::random_density(3000 + trial);
    // Symmetry.
    CHECK(std::abs(uhlmann_fidelity(rho, sigma) - uhlmann_fidelity(sigma, rho)) < 1e-9);
    // Reduction to the pure-state overlap.
    const PureState psi = test::random_pure(4000 + trial);
    CHECK(std::abs(uhlmann_fidelity(rho, outer_product(psi)) - fidelity_to_pure(rho, psi)) < 1e-9);
    // Self-fidelity.
    CHECK(uhlmann_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("concurrence on Bell, product, and Werner states") {
  CHECK(concurrence(outer_product(bell_phi_theta(kPi))) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(concurrence(outer_product(bell_phi_theta(0.0))) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(concurrence(outer_product(bell_phi_theta(0.37))) == doctest::Approx(1.0).epsilon(1e-10));

  const DensityMatrix ground = outer_product(PureState::from_amplitudes(
      {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)}));
  CHECK(concurrence(ground) == doctest::Approx(0.0).epsilon(1e-10));

  // Product state |D>|R>.
  const PureState product = PureState::from_amplitudes(
      {Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(0.5, 0.0), Complex(0.0, 0.5)});
  CHECK(concurrence(outer_product(product)) < 1e-9);

  // Werner concurrence max(0, (3p-1)/2).
  CHECK(concurrence(werner(0.8)) == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(concurrence(werner(0.2)) == 0.0);
}

TEST_CASE("concurrence is invariant under local unitaries") {
  SplitMix64 rng = substream(31, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = trial % 2 == 0 ? werner(0.75) : test::random_density(5000 + trial);
    const double before = concurrence(rho);
    const ComplexMatrix local = tensor2(test::random_unitary(rng, 2), test::random_unitary(rng, 2));
    const double after = concurrence(normalize(apply_kraus(local, rho)));
    CHECK(std::abs(before - after) < 1e-9);
  }
}

TEST_CASE("hermitian_eig on known spectra") {
  const HermitianEig ident = hermitian_eig(ComplexMatrix::identity(4));
  for (double v : ident.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  ComplexMatrix diag(4, 4);
  diag(0, 0) = Complex(3.0, 0.0);
  diag(1, 1) = Complex(1.0, 0.0);
  diag(2, 2) = Complex(2.0, 0.0);
  diag(3, 3) = Complex(0.0, 0.0);
  const HermitianEig sorted = hermitian_eig(diag);
  CHECK(sorted.values[0] == doctest::Approx(3.0));
  CHECK(sorted.values[1] == doctest::Approx(2.0));
  CHECK(sorted.values[2] == doctest::Approx(1.0));
  CHECK(sorted.values[3] == doctest::Approx(0.0));

  const HermitianEig rank1 = hermitian_eig(outer_product(bell_phi_theta(kPi)).matrix());
  CHECK(rank1.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(rank1.values[i]) < 1e-12);

  ComplexMatrix flip(2, 2);
  flip(0, 1) = flip(1, 0) = Complex(1.0, 0.0);
  const HermitianEig pm = hermitian_eig(flip);
  CHECK(pm.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pm.values[1] == doctest::Approx(-1.0).epsilon(1e-12));

  ComplexMatrix skew(2, 2);
  skew(0, 1) = Complex(1.0, 0.0);
  CHECK_THROWS_AS(hermitian_eig(skew), std::invalid_argument);
}

TEST_CASE("hermitian_eig round-trips randomized Hermitian matrices") {
  SplitMix64 rng = substream(41, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix g = test::random_matrix(rng, 4);
    const ComplexMatrix h = (g + g.adjoint()).scaled(Complex(0.5, 0.0));
    const HermitianEig eig = hermitian_eig(h);

    ComplexMatrix reconstructed(4, 4);
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          reconstructed(i, j) += eig.values[k] * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    CHECK(reconstructed.max_abs_diff(h) < 1e-8);

    const ComplexMatrix vhv = eig.vectors.adjoint() * eig.vectors;
    CHECK(vhv.max_abs_diff(ComplexMatrix::identity(4)) < 1e-8);
  }
}

TEST_CASE("purity after kraus never exceeds one") {
  SplitMix64 rng = substream(51, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix k = test::random_matrix(rng, 4);
    const DensityMatrix rho = test::random_density(6000 + trial);
    const DensityMatrix pushed = apply_kraus(k, rho);
    if (pushed.trace_real() <= 1e-15) continue;
    CHECK(purity(normalize(pushed)) <= 1.0 + 1e-10);
  }
}

TEST_CASE("density matrix validation rejects bad inputs") {
  ComplexMatrix nonherm(4, 4);
  nonherm(0, 1) = Complex(1.0, 0.0);
  nonherm(0, 0) = Complex(1.0, 0.0);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(nonherm), std::invalid_argument);

  ComplexMatrix negative(4, 4);
  negative(0, 0) = Complex(1.5, 0.0);
  negative(1, 1) = Complex(-0.5, 0.0);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(negative), std::invalid_argument);

  ComplexMatrix overtrace = ComplexMatrix::identity(4);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(overtrace), std::invalid_argument);

  CHECK_NOTHROW(DensityMatrix::from_matrix(test::werner(0.5).matrix()));
}
