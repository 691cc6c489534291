#include "uqsim/switch_channel.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "uqsim/errors.hpp"
#include "uqsim/kernels.hpp"
#include "uqsim/rng.hpp"

namespace uqsim {

namespace {

using M2 = std::array<Complex, 4>;   // row-major 2x2
using M4 = std::array<Complex, 16>;  // row-major 4x4

M2 mul2(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// k (x) I on the signal qubit.
M4 kron_signal(const M2& k) {
  M4 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int s = 0; s < 2; ++s) out[(2 * i + s) * 4 + (2 * j + s)] = k[i * 2 + j];
  return out;
}

M2 to_m2(const ComplexMatrix& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

// Crosstalk mixing at one splitter when both logical rails are live.
// Column j is the image of logical j, so per-mode extinction ratios are
// honored; for eps0 == eps1 this is exactly j_leak.
M2 leak_pair(double eps0, double eps1) {
  return {Complex(std::sqrt(1.0 - eps0 * eps0), 0.0), Complex(eps1, 0.0),
          Complex(eps0, 0.0), Complex(std::sqrt(1.0 - eps1 * eps1), 0.0)};
}

// Everything about one spec that does not depend on the phase sample.
struct ChannelParts {
  M2 left_both, right_both;  // J_loss*leak_pair and leak_pair*J_loss
  M2 left1, right1;          // projector(1)*J_loss*J_leak(e1), J_leak(e1)*J_loss
  M4 kraus0;                 // full phi-independent single-rail-0 operator
  double amplitude;          // a
  OutcomeProbabilities prob;
};

ChannelParts make_parts(const SwitchSpec& spec) {
  spec.validate();
  const double e0 = per_to_epsilon(spec.per_db_0);
  const double e1 = per_to_epsilon(spec.per_db_1);
  const M2 loss = to_m2(j_loss(spec));
  const M2 pair = leak_pair(e0, e1);
  const M2 leak0 = to_m2(j_leak(e0));
  const M2 leak1 = to_m2(j_leak(e1));

  ChannelParts p;
  p.amplitude = mzi_amplitude(spec);
  p.prob = outcome_probabilities(spec);
  p.left_both = mul2(loss, pair);
  p.right_both = mul2(pair, loss);

  // Lost-rail branches: a dead rail carries no coherence, so the chain is
  // premultiplied with the projector onto the surviving logical mode.
  // Branch 0 has no phase term; branch 1 keeps phi.
  const M2 proj0{Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)};
  const M2 proj1{Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0)};
  M2 chain0 = mul2(loss, mul2(leak0, mul2(to_m2(j_mzi(p.amplitude, 0.0)), mul2(leak0, loss))));
  p.kraus0 = kron_signal(mul2(proj0, chain0));
  p.left1 = mul2(proj1, mul2(loss, leak1));
  p.right1 = mul2(leak1, loss);
  return p;
}

// Weighted three-branch mixture for one phase sample, written into `out`.
void sample_mixture(const ChannelParts& p, const M4& rho, double phi, M4& out, const M4& rho0_term) {
  const auto& k = kern::active();
  const Complex eig(std::cos(phi), std::sin(phi));
  const M2 mzi{Complex(p.amplitude, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), p.amplitude * eig};

  const M4 kb = kron_signal(mul2(p.left_both, mul2(mzi, p.right_both)));
  const M4 k1 = kron_signal(mul2(p.left1, mul2(mzi, p.right1)));

  M4 tmp, adj, term;
  out.fill(Complex(0.0, 0.0));

  k.mul4(tmp.data(), kb.data(), rho.data());
  kern::adjoint4(adj.data(), kb.data());
  k.mul4(term.data(), tmp.data(), adj.data());
  k.axpy4(out.data(), p.prob.both, term.data());

  k.axpy4(out.data(), p.prob.only0, rho0_term.data());

  k.mul4(tmp.data(), k1.data(), rho.data());
  kern::adjoint4(adj.data(), k1.data());
  k.mul4(term.data(), tmp.data(), adj.data());
  k.axpy4(out.data(), p.prob.only1, term.data());
}

M4 sandwich(const M4& op, const M4& rho) {
  const auto& k = kern::active();
  M4 tmp, adj, out;
  k.mul4(tmp.data(), op.data(), rho.data());
  kern::adjoint4(adj.data(), op.data());
  k.mul4(out.data(), tmp.data(), adj.data());
  return out;
}

M4 to_m4(const ComplexMatrix& m) {
  M4 out;
  for (int i = 0; i < 16; ++i) out[i] = m.data()[i];
  return out;
}

ComplexMatrix from_m4(const M4& m) {
  ComplexMatrix out(4, 4);
  for (int i = 0; i < 16; ++i) out.data()[i] = m[i];
  return out;
}

}  // namespace

void SwitchSpec::validate() const {
  auto finite_nonneg = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string("SwitchSpec: ") + name + " must be finite and >= 0");
  };
  finite_nonneg(pdl_db, "pdl_db");
  finite_nonneg(coupling_db, "coupling_db");
  finite_nonneg(prs_loss_db, "prs_loss_db");
  finite_nonneg(mzi_loss_db, "mzi_loss_db");
  // Extinction ratios may be +inf (impairment absent) but not NaN/negative.
  if (!(per_db_0 >= 0.0)) throw std::invalid_argument("SwitchSpec: per_db_0 must be >= 0");
  if (!(per_db_1 >= 0.0)) throw std::invalid_argument("SwitchSpec: per_db_1 must be >= 0");
  if (!(er_mzi_db >= 0.0)) throw std::invalid_argument("SwitchSpec: er_mzi_db must be >= 0");
  if (dimension_n < 2 || (dimension_n & (dimension_n - 1)) != 0)
    throw std::invalid_argument("SwitchSpec: dimension_n must be a power of two >= 2");
  if (!std::isfinite(phase_offset_rad)) throw std::invalid_argument("SwitchSpec: phase_offset_rad must be finite");
  if (!(phase_sigma_rad >= 0.0) || !std::isfinite(phase_sigma_rad))
    throw std::invalid_argument("SwitchSpec: phase_sigma_rad must be finite and >= 0");
  if (mc_iterations < 1) throw std::invalid_argument("SwitchSpec: mc_iterations must be >= 1");
}

double db_to_linear_loss(double x_db) {
  if (!(x_db >= 0.0)) throw std::invalid_argument("db_to_linear_loss: argument must be >= 0 dB");
  return std::pow(10.0, -x_db / 10.0);
}

double per_to_epsilon(double per_db) {
  if (!(per_db > 0.0)) throw std::invalid_argument("per_to_epsilon: extinction ratio must be > 0 dB");
  if (std::isinf(per_db)) return 0.0;
  return std::pow(10.0, -per_db / 20.0);
}

unsigned switch_depth(unsigned n) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("switch_depth: dimension must be a power of two >= 2");
  unsigned log2n = 0;
  for (unsigned v = n; v > 1; v >>= 1) ++log2n;
  return 2 * log2n - 1;
}

ComplexMatrix j_loss(const SwitchSpec& spec) {
  const double eta_c = db_to_linear_loss(spec.coupling_db);
  const double eta_prs = db_to_linear_loss(spec.prs_loss_db);
  const double eta_pdl = db_to_linear_loss(spec.pdl_db);
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex(std::sqrt(eta_c * eta_prs), 0.0);
  m(1, 1) = Complex(std::sqrt(eta_c * eta_prs * eta_pdl), 0.0);
  return m;
}

ComplexMatrix j_leak(double epsilon) {
  if (!(epsilon >= 0.0) || epsilon >= 1.0)
    throw std::invalid_argument("j_leak: crosstalk amplitude must be in [0, 1)");
  ComplexMatrix m(2, 2);
  const double keep = std::sqrt(1.0 - epsilon * epsilon);
  m(0, 0) = m(1, 1) = Complex(keep, 0.0);
  m(0, 1) = m(1, 0) = Complex(epsilon, 0.0);
  return m;
}

ComplexMatrix j_mzi(double amplitude, double phi) {
  if (!(amplitude > 0.0) || amplitude > 1.0)
    throw std::invalid_argument("j_mzi: amplitude must be in (0, 1]");
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex(amplitude, 0.0);
  m(1, 1) = amplitude * Complex(std::cos(phi), std::sin(phi));
  return m;
}

double mzi_amplitude(const SwitchSpec& spec) {
  const unsigned depth = switch_depth(spec.dimension_n);
  return std::pow(10.0, -spec.mzi_loss_db * depth / 20.0);
}

double success_probability(const SwitchSpec& spec) {
  const unsigned depth = switch_depth(spec.dimension_n);
  const double er_linear = std::isinf(spec.er_mzi_db) ? 0.0 : db_to_linear_loss(spec.er_mzi_db);
  return std::pow(1.0 - er_linear, static_cast<double>(depth));
}

OutcomeProbabilities outcome_probabilities(const SwitchSpec& spec) {
  const double ps = success_probability(spec);
  return {ps * ps, ps * (1.0 - ps), ps * (1.0 - ps)};
}

DensityMatrix apply_switch_once(const DensityMatrix& rho_in, const SwitchSpec& spec, double phi) {
  if (!std::isfinite(phi)) throw std::invalid_argument("apply_switch_once: phi must be finite");
  const ChannelParts parts = make_parts(spec);
  const M4 rho = to_m4(rho_in.matrix());
  const M4 rho0_term = sandwich(parts.kraus0, rho);
  M4 out;
  sample_mixture(parts, rho, phi, out, rho0_term);
  return DensityMatrix::unchecked(from_m4(out));
}

ChannelOutcome monte_carlo_output(const DensityMatrix& rho_in, const SwitchSpec& spec,
                                  FidelityTarget target, unsigned threads) {
  const ChannelParts parts = make_parts(spec);
  const M4 rho = to_m4(rho_in.matrix());
  const M4 rho0_term = sandwich(parts.kraus0, rho);
  const std::uint64_t iterations = spec.mc_iterations;

  M4 total{};
  if (spec.phase_sigma_rad == 0.0) {
    // Every sample is identical; the average is one deterministic sample.
    sample_mixture(parts, rho, spec.phase_offset_rad, total, rho0_term);
  } else {
    constexpr std::uint64_t kBlock = 4096;
    const std::uint64_t n_blocks = (iterations + kBlock - 1) / kBlock;
    std::vector<M4> partial(n_blocks);

    auto run_block = [&](std::uint64_t b) {
      M4 acc{};
      M4 sample;
      const std::uint64_t begin = b * kBlock;
      const std::uint64_t end = std::min(begin + kBlock, iterations);
      for (std::uint64_t j = begin; j < end; ++j) {
        SplitMix64 rng = substream(spec.seed, j);
        const double phi = spec.phase_offset_rad + spec.phase_sigma_rad * gaussian(rng);
        sample_mixture(parts, rho, phi, sample, rho0_term);
        kern::active().axpy4(acc.data(), 1.0, sample.data());
      }
      partial[b] = acc;
    };

    if (threads <= 1 || n_blocks == 1) {
      for (std::uint64_t b = 0; b < n_blocks; ++b) run_block(b);
    } else {
      const unsigned n_workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_blocks));
      std::vector<std::thread> pool;
      pool.reserve(n_workers);
      for (unsigned w = 0; w < n_workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::uint64_t b = w; b < n_blocks; b += n_workers) run_block(b);
        });
      }
      for (auto& t : pool) t.join();
    }
    // Fixed block order keeps the reduction independent of scheduling.
    for (std::uint64_t b = 0; b < n_blocks; ++b) kern::active().axpy4(total.data(), 1.0, partial[b].data());
    const double inv_m = 1.0 / static_cast<double>(iterations);
    for (Complex& z : total) z *= inv_m;
  }

  ComplexMatrix raw = from_m4(total);
  // Re-hermitize away accumulation noise before computing metrics.
  raw = (raw + raw.adjoint()).scaled(Complex(0.5, 0.0));
  const double throughput = raw.trace().real();
  if (throughput <= 1e-15) throw DegenerateStateError("channel output has vanishing trace");
  const DensityMatrix rho_out = normalize(DensityMatrix::unchecked(std::move(raw)));

  const PureState target_state =
      target == FidelityTarget::kPhiMinus ? bell_phi_theta(std::numbers::pi) : principal_eigenvector(rho_in);

  ChannelOutcome out{rho_out, throughput, fidelity_to_pure(rho_out, target_state), purity(rho_out),
                     concurrence(rho_out)};
  return out;
}

}  // namespace uqsim
