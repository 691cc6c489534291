#include "uqsim/rlc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "uqsim/errors.hpp"

namespace uqsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const double kE24[] = {1.0, 1.1, 1.2, 1.3, 1.5, 1.6, 1.8, 2.0, 2.2, 2.4, 2.7, 3.0,
                       3.3, 3.6, 3.9, 4.3, 4.7, 5.1, 5.6, 6.2, 6.8, 7.5, 8.2, 9.1};

std::vector<double> e24_table() {
  std::vector<double> values;
  for (int decade = 0; decade <= 6; ++decade) {
    const double scale = std::pow(10.0, decade);
    for (double v : kE24) values.push_back(v * scale);
  }
  return values;
}

}  // namespace

void RlcParams::validate() const {
  if (!(inductance_h > 0.0) || !(capacitance_f > 0.0))
    throw std::invalid_argument("RlcParams: inductance and capacitance must be positive");
  if (!(damping_ratio > 0.0) || damping_ratio > 2.0)
    throw std::invalid_argument("RlcParams: damping ratio must be in (0, 2]");
  if (!(source_impedance_ohm > 0.0)) throw std::invalid_argument("RlcParams: source impedance must be positive");
}

StepTrace StepTrace::from_samples(std::vector<double> time_s, std::vector<double> volts) {
  if (time_s.size() != volts.size()) throw std::invalid_argument("StepTrace: column length mismatch");
  if (time_s.size() < 16) throw std::invalid_argument("StepTrace: need at least 16 samples");
  const double dt = time_s[1] - time_s[0];
  if (!(dt > 0.0)) throw std::invalid_argument("StepTrace: time must be strictly increasing");
  for (std::size_t i = 1; i < time_s.size(); ++i) {
    const double step = time_s[i] - time_s[i - 1];
    if (!(step > 0.0)) throw std::invalid_argument("StepTrace: time must be strictly increasing");
    if (std::abs(step - dt) > 1e-6 * dt) throw std::invalid_argument("StepTrace: time step must be uniform");
  }
  return StepTrace{std::move(time_s), std::move(volts)};
}

double ring_frequency(double inductance_h, double capacitance_f) {
  if (!(inductance_h > 0.0) || !(capacitance_f > 0.0))
    throw std::invalid_argument("ring_frequency: L and C must be positive");
  return 1.0 / (kTwoPi * std::sqrt(inductance_h * capacitance_f));
}

double total_resistance(double zeta, double inductance_h, double capacitance_f) {
  if (!(zeta > 0.0) || !(inductance_h > 0.0) || !(capacitance_f > 0.0))
    throw std::invalid_argument("total_resistance: inputs must be positive");
  return 2.0 * zeta * std::sqrt(inductance_h / capacitance_f);
}

double series_resistance(double r_total_ohm, double z_source_ohm) {
  if (!(r_total_ohm > 0.0) || !(z_source_ohm > 0.0))
    throw std::invalid_argument("series_resistance: resistances must be positive");
  if (r_total_ohm <= z_source_ohm)
    throw std::invalid_argument("series_resistance: source impedance already meets the damping target");
  return r_total_ohm - z_source_ohm;
}

double settling_time_estimate(double zeta, double inductance_h, double capacitance_f, double band) {
  if (!(zeta > 0.0) || zeta >= 1.0)
    throw std::invalid_argument("settling_time_estimate: underdamped response required (0 < zeta < 1)");
  if (!(band > 0.0) || band >= 1.0) throw std::invalid_argument("settling_time_estimate: band must be in (0, 1)");
  const double omega_n = 1.0 / std::sqrt(inductance_h * capacitance_f);
  return -std::log(band * std::sqrt(1.0 - zeta * zeta)) / (zeta * omega_n);
}

DampingEstimate extract_damping(const StepTrace& trace) {
  const std::size_t n = trace.volts.size();
  // Settled value from the trace tail.
  const std::size_t tail = std::max<std::size_t>(4, n / 8);
  double final_value = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) final_value += trace.volts[i];
  final_value /= static_cast<double>(tail);

  double v_max = final_value;
  for (double v : trace.volts) v_max = std::max(v_max, v);
  const double margin = 1e-3 * (v_max - final_value);

  // Overshoot peak heights; quadratic refinement around each maximum.
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v = trace.volts[i];
    if (v <= trace.volts[i - 1] || v < trace.volts[i + 1]) continue;
    if (v <= final_value + margin) continue;
    const double a = trace.volts[i - 1], b = v, c = trace.volts[i + 1];
    const double denom = a - 2.0 * b + c;
    const double refined = denom < 0.0 ? b - (a - c) * (a - c) / (8.0 * denom) : b;
    peaks.push_back(refined - final_value);
  }
  if (peaks.size() < 2)
    throw InsufficientDataError("extract_damping: need at least two overshoot peaks above the settled value");

  double delta_sum = 0.0;
  std::size_t delta_count = 0;
  for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
    if (peaks[i + 1] <= 0.0 || peaks[i] <= peaks[i + 1]) continue;
    delta_sum += std::log(peaks[i] / peaks[i + 1]);
    ++delta_count;
  }
  if (delta_count == 0) throw InsufficientDataError("extract_damping: peak sequence is not decaying");
  const double delta = delta_sum / static_cast<double>(delta_count);
  const double zeta = delta / std::sqrt(4.0 * std::numbers::pi * std::numbers::pi + delta * delta);

  // Ringing segment: out to twice the last sample still 2% away from the
  // settled value, so the flat tail cannot dominate the spectrum.
  std::size_t last_active = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(trace.volts[i] - final_value) > 0.02 * (v_max - final_value)) last_active = i;
  const std::size_t segment = std::min(n, std::max<std::size_t>(32, 2 * last_active + 2));

  // Dominant frequency of the mean-removed segment, sub-bin by quadratic
  // interpolation of the magnitude peak.
  double mean = 0.0;
  for (std::size_t i = 0; i < segment; ++i) mean += trace.volts[i];
  mean /= static_cast<double>(segment);
  const std::size_t half = segment / 2;
  std::vector<double> mag(half + 1, 0.0);
  for (std::size_t k = 1; k <= half; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < segment; ++i) {
      const double angle =
          -kTwoPi * static_cast<double>(k) * static_cast<double>(i) / static_cast<double>(segment);
      acc += (trace.volts[i] - mean) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    mag[k] = std::abs(acc);
  }
  std::size_t k_max = 1;
  for (std::size_t k = 2; k <= half; ++k)
    if (mag[k] > mag[k_max]) k_max = k;
  double k_refined = static_cast<double>(k_max);
  if (k_max > 1 && k_max < half) {
    const double a = mag[k_max - 1], b = mag[k_max], c = mag[k_max + 1];
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) k_refined += 0.5 * (a - c) / denom;
  }
  const double resolution = 1.0 / (static_cast<double>(segment) * trace.dt());
  const double f_ring = k_refined * resolution;

  return DampingEstimate{zeta, f_ring, resolution, peaks.size()};
}

LcEstimate estimate_lc(double f_ring_hz, double decay_rate_per_s, double resistance_ohm) {
  if (!(f_ring_hz > 0.0)) throw std::invalid_argument("estimate_lc: ring frequency must be positive");
  if (!(decay_rate_per_s > 0.0)) throw std::invalid_argument("estimate_lc: undamped response (zero decay rate)");
  if (!(resistance_ohm > 0.0)) throw std::invalid_argument("estimate_lc: resistance must be positive");
  const double omega_d = kTwoPi * f_ring_hz;
  const double omega_n_sq = omega_d * omega_d + decay_rate_per_s * decay_rate_per_s;
  const double inductance = resistance_ohm / (2.0 * decay_rate_per_s);
  const double capacitance = 1.0 / (omega_n_sq * inductance);
  return LcEstimate{inductance, capacitance};
}

double e24_nearest(double r_ohm) {
  if (!(r_ohm > 0.0)) throw std::invalid_argument("e24_nearest: resistance must be positive");
  double best = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (double v : e24_table()) {
    const double err = std::abs(v - r_ohm);
    if (err < best_err) {
      best_err = err;
      best = v;
    }
  }
  return best;
}

double e24_not_below(double r_ohm) {
  if (!(r_ohm > 0.0)) throw std::invalid_argument("e24_not_below: resistance must be positive");
  const std::vector<double> table = e24_table();
  for (double v : table)
    if (v >= r_ohm) return v;
  return table.back();
}

}  // namespace uqsim
