#ifndef UQSIM_SWITCH_CHANNEL_HPP
#define UQSIM_SWITCH_CHANNEL_HPP

#include <cstdint>
#include <limits>

#include "uqsim/qmath.hpp"

// The weighted-Pauli-channel model of the switch: component Jones
// matrices, routing-failure probabilities, and the Monte-Carlo-averaged
// output state with its quality metrics.

namespace uqsim {

inline constexpr double kInfDb = std::numeric_limits<double>::infinity();

// Full hardware parameterization of one channel evaluation.  dB fields
// are >= 0; +inf means the impairment is absent (infinite extinction).
struct SwitchSpec {
  double per_db_0 = kInfDb;   // polarization extinction ratio, logical 0
  double per_db_1 = kInfDb;   // polarization extinction ratio, logical 1
  double pdl_db = 0.0;        // polarization-dependent loss per splitter
  double coupling_db = 0.0;   // facet coupling loss per pass
  double prs_loss_db = 0.0;   // splitter insertion loss per pass
  double mzi_loss_db = 0.0;   // insertion loss per interferometer stage
  double er_mzi_db = kInfDb;  // interferometer extinction ratio
  unsigned dimension_n = 2;   // port count, power of two
  double phase_offset_rad = 0.0;
  double phase_sigma_rad = 0.0;
  std::uint64_t mc_iterations = 1;
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

struct ChannelOutcome {
  DensityMatrix rho_out;  // trace 1
  double throughput;      // trace of the raw (lossy) mixture
  double fidelity;
  double purity;
  double concurrence;
};

struct OutcomeProbabilities {
  double both;   // p_s^2
  double only0;  // p_s (1 - p_s)
  double only1;  // p_s (1 - p_s)
};

enum class FidelityTarget {
  kInput,     // pure state maximizing overlap with rho_in
  kPhiMinus,  // canonical (|00> - |11>)/sqrt(2)
};

// 10^(-x/10); power transmission of an attenuation quoted in dB.
double db_to_linear_loss(double x_db);

// Crosstalk amplitude from an extinction ratio quoted as a power ratio:
// eps = 10^(-per/20), so the leaked power eps^2 matches the measurement.
double per_to_epsilon(double per_db);

// Stages traversed in the rearrangeably non-blocking fabric: 2 log2(n) - 1.
unsigned switch_depth(unsigned n);

ComplexMatrix j_loss(const SwitchSpec& spec);      // diag(sqrt(eta_c*eta_prs), sqrt(eta_c*eta_prs*eta_pdl))
ComplexMatrix j_leak(double epsilon);              // [[sqrt(1-e^2), e], [e, sqrt(1-e^2)]]
ComplexMatrix j_mzi(double amplitude, double phi); // diag(a, a e^{i phi})

// a = sqrt(eta_mzi^D) for the spec's stage loss and depth.
double mzi_amplitude(const SwitchSpec& spec);

// p_s = (1 - er_linear)^D
double success_probability(const SwitchSpec& spec);

OutcomeProbabilities outcome_probabilities(const SwitchSpec& spec);

// One phase sample of the channel: P1 rho_both(phi) + P2 rho_0 + P3 rho_1,
// unnormalized.  The single-rail branches premultiply the Jones chain
// with the projector onto the surviving logical mode; branch 0 carries no
// phase term, branch 1 carries phi.
DensityMatrix apply_switch_once(const DensityMatrix& rho_in, const SwitchSpec& spec, double phi);

// Averages apply_switch_once over mc_iterations Gaussian phase samples
// phi_j = offset + sigma * g_j, normalizes, and attaches metrics.
// Bit-identical for a fixed seed regardless of thread count: samples use
// per-iteration substreams and the reduction runs in fixed block order.
ChannelOutcome monte_carlo_output(const DensityMatrix& rho_in, const SwitchSpec& spec,
                                  FidelityTarget target = FidelityTarget::kInput,
                                  unsigned threads = 1);

}  // namespace uqsim

#endif
