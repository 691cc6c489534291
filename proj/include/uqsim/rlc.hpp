#ifndef UQSIM_RLC_HPP
#define UQSIM_RLC_HPP

#include <cstddef>
#include <vector>

// Lumped-element design helpers for the modulator drive chain: ring
// frequency, damping design, series-resistor sizing, settling estimate,
// and parameter extraction from a sampled step response.

namespace uqsim {

struct RlcParams {
  double inductance_h;
  double capacitance_f;
  double damping_ratio;
  double source_impedance_ohm;

  void validate() const;  // all positive, damping in (0, 2]
};

// Uniformly sampled step response.
struct StepTrace {
  std::vector<double> time_s;
  std::vector<double> volts;

  static StepTrace from_samples(std::vector<double> time_s, std::vector<double> volts);
  double dt() const { return time_s[1] - time_s[0]; }
};

// 1 / (2 pi sqrt(LC))
double ring_frequency(double inductance_h, double capacitance_f);

// 2 zeta sqrt(L/C)
double total_resistance(double zeta, double inductance_h, double capacitance_f);

// r_total - z_source; throws std::invalid_argument when no series
// resistor is needed.
double series_resistance(double r_total_ohm, double z_source_ohm);

// -ln(band sqrt(1 - zeta^2)) / (zeta omega_n); the standard second-order
// estimate (about 4/(zeta omega_n) at the 2% band).
double settling_time_estimate(double zeta, double inductance_h, double capacitance_f, double band);

struct DampingEstimate {
  double zeta;                     // from the logarithmic decrement of overshoot peaks
  double ring_frequency_hz;        // dominant DFT bin of the ringing segment, interpolated
  double frequency_resolution_hz;  // bin width of the analyzed segment
  std::size_t peaks_used;
};

// Requires at least two overshoot maxima above the settled value.  The
// frequency estimate transforms only the rising/ringing segment so the
// settled tail's step spectrum cannot mask the resonance.
DampingEstimate extract_damping(const StepTrace& trace);

struct LcEstimate {
  double inductance_h;
  double capacitance_f;
};

// Inverts omega_d = omega_n sqrt(1 - zeta^2) and sigma = R/(2L) given the
// resistance present during the ringing measurement.
LcEstimate estimate_lc(double f_ring_hz, double decay_rate_per_s, double resistance_ohm);

// Standard E24 resistor values spanning 1 ohm to 9.1 Mohm.
double e24_nearest(double r_ohm);
// Smallest E24 value >= r_ohm: the recommendation rule for a series
// damping resistor, which must not undershoot the damping target.
double e24_not_below(double r_ohm);

}  // namespace uqsim

#endif
