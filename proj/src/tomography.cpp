#include "uqsim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uqsim/errors.hpp"
#include "uqsim/kernels.hpp"
#include "uqsim/rng.hpp"

namespace uqsim {

namespace {

std::array<Complex, 2> basis_ket(Basis b) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (b) {
    case Basis::H: return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    case Basis::V: return {Complex(0.0, 0.0), Complex(1.0, 0.0)};
    case Basis::D: return {Complex(r, 0.0), Complex(r, 0.0)};
    case Basis::A: return {Complex(r, 0.0), Complex(-r, 0.0)};
    case Basis::R: return {Complex(r, 0.0), Complex(0.0, r)};
    case Basis::L: return {Complex(r, 0.0), Complex(0.0, -r)};
  }
  throw std::invalid_argument("unknown basis label");
}

// |s,i> product ket for one analyzer setting.
std::array<Complex, 4> setting_ket(Basis s, Basis i) {
  const auto ks = basis_ket(s);
  const auto ki = basis_ket(i);
  return {ks[0] * ki[0], ks[0] * ki[1], ks[1] * ki[0], ks[1] * ki[1]};
}

std::size_t setting_index(Basis s, Basis i) {
  return static_cast<std::size_t>(s) * 6 + static_cast<std::size_t>(i);
}

double probability(const ComplexMatrix& rho, const std::array<Complex, 4>& ket) {
  Complex p(0.0, 0.0);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) p += std::conj(ket[a]) * rho(a, b) * ket[b];
  return p.real();
}

// Solves the 16x16 real system a x = b in place by Gaussian elimination
// with partial pivoting.
std::array<double, 16> solve16(std::array<std::array<double, 16>, 16> a, std::array<double, 16> b) {
  for (std::size_t col = 0; col < 16; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 16; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-12) throw NumericError("linear_inversion: singular design matrix");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = 0; r < 16; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < 16; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::array<double, 16> x{};
  for (std::size_t i = 0; i < 16; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Real parameterization of a Hermitian 4x4: 4 diagonal entries followed
// by (re, im) of the 6 upper-triangle entries.
ComplexMatrix hermitian_from_params(const std::array<double, 16>& x) {
  ComplexMatrix m(4, 4);
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = Complex(x[k++], 0.0);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double re = x[k++];
      const double im = x[k++];
      m(i, j) = Complex(re, im);
      m(j, i) = Complex(re, -im);
    }
  }
  return m;
}

// d(p_setting)/d(param): probability is linear in the Hermitian params.
std::array<double, 16> probability_gradient(const std::array<Complex, 4>& ket) {
  std::array<double, 16> g{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i) g[k++] = std::norm(ket[i]);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Complex cross = std::conj(ket[i]) * ket[j];
      g[k++] = 2.0 * cross.real();
      g[k++] = -2.0 * cross.imag();
    }
  }
  return g;
}

double log_likelihood(const std::vector<TomoRecord>& records,
                      const std::vector<std::array<Complex, 4>>& kets, const ComplexMatrix& rho) {
  double ll = 0.0;
  for (std::size_t j = 0; j < records.size(); ++j) {
    if (records[j].count == 0) continue;
    const double p = std::max(probability(rho, kets[j]), 1e-300);
    ll += static_cast<double>(records[j].count) * std::log(p);
  }
  return ll;
}

ComplexMatrix clip_to_physical(const ComplexMatrix& hermitian) {
  const HermitianEig eig = hermitian_eig(hermitian);
  ComplexMatrix out(4, 4);
  double tr = 0.0;
  for (std::size_t k = 0; k < 4; ++k) tr += std::max(eig.values[k], 0.0);
  if (tr <= 0.0) throw NumericError("projection onto physical states failed: no positive weight");
  for (std::size_t k = 0; k < 4; ++k) {
    const double w = std::max(eig.values[k], 0.0) / tr;
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        out(i, j) += w * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return out;
}

}  // namespace

std::string basis_name(Basis b) {
  switch (b) {
    case Basis::H: return "H";
    case Basis::V: return "V";
    case Basis::D: return "D";
    case Basis::A: return "A";
    case Basis::R: return "R";
    case Basis::L: return "L";
  }
  throw std::invalid_argument("unknown basis label");
}

Basis basis_from_name(const std::string& name) {
  for (Basis b : kAllBases)
    if (basis_name(b) == name) return b;
  throw std::invalid_argument("unknown basis label: " + name);
}

ComplexMatrix projector(Basis b) {
  const auto ket = basis_ket(b);
  ComplexMatrix m(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  return m;
}

void TomographyDataset::require_complete() const {
  std::array<bool, 36> seen{};
  for (const auto& rec : records) {
    const std::size_t idx = setting_index(rec.signal, rec.idler);
    if (seen[idx])
      throw std::invalid_argument("duplicate tomography setting " + basis_name(rec.signal) +
                                  basis_name(rec.idler));
    seen[idx] = true;
  }
  std::string missing;
  for (Basis s : kAllBases)
    for (Basis i : kAllBases)
      if (!seen[setting_index(s, i)]) missing += " " + basis_name(s) + basis_name(i);
  if (!missing.empty()) throw std::invalid_argument("incomplete tomography dataset; missing settings:" + missing);
  if (counts_per_setting == 0) throw std::invalid_argument("counts_per_setting must be positive");
}

std::uint64_t TomographyDataset::total_counts() const {
  std::uint64_t t = 0;
  for (const auto& rec : records) t += rec.count;
  return t;
}

double expected_probability(const DensityMatrix& rho, Basis signal, Basis idler) {
  if (!rho.is_normalized()) throw std::invalid_argument("expected_probability requires a unit-trace state");
  return std::clamp(probability(rho.matrix(), setting_ket(signal, idler)), 0.0, 1.0);
}

TomographyDataset simulate_counts(const DensityMatrix& rho, std::uint64_t n_per_setting,
                                  std::uint64_t seed, double background_rate) {
  if (n_per_setting < 1) throw std::invalid_argument("simulate_counts: n_per_setting must be >= 1");
  if (!(background_rate >= 0.0)) throw std::invalid_argument("simulate_counts: background rate must be >= 0");
  TomographyDataset data;
  data.counts_per_setting = n_per_setting;
  data.records.reserve(36);
  for (Basis s : kAllBases) {
    for (Basis i : kAllBases) {
      const double mean = static_cast<double>(n_per_setting) * (expected_probability(rho, s, i) + background_rate);
      SplitMix64 rng = substream(seed, setting_index(s, i));
      data.records.push_back({s, i, poisson(rng, mean)});
    }
  }
  return data;
}

ComplexMatrix linear_inversion(const TomographyDataset& data) {
  data.require_complete();
  // Least squares over the 16 real Hermitian parameters: normal equations
  // from the 36 linear probability constraints.
  std::array<std::array<double, 16>, 16> ata{};
  std::array<double, 16> atb{};
  const double n = static_cast<double>(data.counts_per_setting);
  for (const auto& rec : data.records) {
    const auto g = probability_gradient(setting_ket(rec.signal, rec.idler));
    const double f = static_cast<double>(rec.count) / n;
    for (std::size_t r = 0; r < 16; ++r) {
      atb[r] += g[r] * f;
      for (std::size_t c = 0; c < 16; ++c) ata[r][c] += g[r] * g[c];
    }
  }
  return hermitian_from_params(solve16(ata, atb));
}

MleResult mle_reconstruct(const TomographyDataset& data, std::size_t max_iters, double tol) {
  data.require_complete();
  if (data.total_counts() == 0) throw std::invalid_argument("mle_reconstruct: dataset has no counts");

  std::vector<std::array<Complex, 4>> kets;
  kets.reserve(36);
  for (const auto& rec : data.records) kets.push_back(setting_ket(rec.signal, rec.idler));
  const double total = static_cast<double>(data.total_counts());

  // Seed with the physical projection of the linear estimate.
  ComplexMatrix rho = clip_to_physical(linear_inversion(data));

  const auto& kz = kern::active();
  double cur_ll = log_likelihood(data.records, kets, rho);
  double best_ll = cur_ll;
  ComplexMatrix best = rho;
  bool converged = false;
  std::size_t iter = 0;
  std::vector<double> trace{cur_ll};

  for (; iter < max_iters; ++iter) {
    // R = sum_j (f_j / p_j) |phi_j><phi_j| over settings with counts.
    ComplexMatrix r(4, 4);
    for (std::size_t j = 0; j < data.records.size(); ++j) {
      if (data.records[j].count == 0) continue;
      const double p = std::max(probability(rho, kets[j]), 1e-15);
      const double w = static_cast<double>(data.records[j].count) / (total * p);
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) r(a, b) += w * kets[j][a] * std::conj(kets[j][b]);
    }

    // R rho R is an ascent direction; when the full step overshoots,
    // halve the dilution until the likelihood stops dropping.  Accepted
    // iterates therefore have non-decreasing likelihood.
    const double accept_slack = 1e-12 * (1.0 + std::abs(cur_ll));
    double dilution = 1.0;
    ComplexMatrix candidate(4, 4);
    double cand_ll = 0.0;
    bool accepted = false;
    while (dilution > 1e-7) {
      ComplexMatrix step = r;
      if (dilution < 1.0) {
        step = r.scaled(Complex(dilution, 0.0));
        for (std::size_t d = 0; d < 4; ++d) step(d, d) += Complex(1.0 - dilution, 0.0);
      }
      ComplexMatrix tmp(4, 4), next(4, 4);
      kz.mul4(tmp.data(), step.data(), rho.data());
      kz.mul4(next.data(), tmp.data(), step.data());
      next = (next + next.adjoint()).scaled(Complex(0.5, 0.0));
      const double tr = next.trace().real();
      if (!(tr > 0.0)) throw NumericError("mle_reconstruct: iterate lost positivity");
      candidate = next.scaled(Complex(1.0 / tr, 0.0));
      cand_ll = log_likelihood(data.records, kets, candidate);
      if (cand_ll >= cur_ll - accept_slack) {
        accepted = true;
        break;
      }
      dilution *= 0.5;
    }
    if (!accepted) {
      converged = true;  // no ascent left at any step size
      break;
    }

    const double delta = candidate.max_abs_diff(rho);
    rho = candidate;
    cur_ll = cand_ll;
    trace.push_back(cur_ll);
    if (cand_ll > best_ll) {
      best_ll = cand_ll;
      best = rho;
    }
    if (delta < tol) {
      converged = true;
      ++iter;
      break;
    }
  }

  // unchecked: iterates are convex combinations conjugated by Hermitian
  // operators, hence Hermitian PSD with unit trace by construction.
  return MleResult{DensityMatrix::unchecked(best), converged, iter, best_ll, std::move(trace)};
}

}  // namespace uqsim
