#ifndef UQSIM_TOMOGRAPHY_HPP
#define UQSIM_TOMOGRAPHY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "uqsim/qmath.hpp"

// Two-qubit polarization tomography: the six-state analyzer projectors,
// synthetic coincidence generation, and maximum-likelihood reconstruction.

namespace uqsim {

// Analyzer settings per photon.  H/V, D/A (+-45 degrees) and R/L
// (circular, R = (|H> + i|V>)/sqrt(2)) form three mutually unbiased bases.
enum class Basis { H, V, D, A, R, L };

inline constexpr std::array<Basis, 6> kAllBases = {Basis::H, Basis::V, Basis::D,
                                                   Basis::A, Basis::R, Basis::L};

std::string basis_name(Basis b);
Basis basis_from_name(const std::string& name);

// Rank-1 polarization projector.
ComplexMatrix projector(Basis b);

struct TomoRecord {
  Basis signal;
  Basis idler;
  std::uint64_t count;
};

// Complete set = all 36 (signal, idler) pairs, each acquired for the
// same nominal number of pairs.
struct TomographyDataset {
  std::vector<TomoRecord> records;
  std::uint64_t counts_per_setting = 0;

  // Throws std::invalid_argument naming any missing settings.
  void require_complete() const;
  std::uint64_t total_counts() const;
};

// Tr(rho (Pi_s (x) Pi_i))
double expected_probability(const DensityMatrix& rho, Basis signal, Basis idler);

// Poisson counts with mean n_per_setting * probability (plus an optional
// flat accidental rate), one deterministic substream per setting.
TomographyDataset simulate_counts(const DensityMatrix& rho, std::uint64_t n_per_setting,
                                  std::uint64_t seed, double background_rate = 0.0);

// Stokes-style least-squares estimate; may have negative eigenvalues.
ComplexMatrix linear_inversion(const TomographyDataset& data);

struct MleResult {
  DensityMatrix rho;
  bool converged;
  std::size_t iterations;
  double log_likelihood;
  std::vector<double> ll_trace;  // accepted-iterate likelihood, non-decreasing
};

// Iterative R rho R fixed point with dilution fallback; iterates are
// physical by construction.  Returns the best-likelihood iterate with a
// convergence flag.
MleResult mle_reconstruct(const TomographyDataset& data, std::size_t max_iters = 10000,
                          double tol = 1e-10);

}  // namespace uqsim

#endif
