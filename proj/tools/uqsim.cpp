#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uqsim/config.hpp"
#include "uqsim/errors.hpp"
#include "uqsim/presets.hpp"
#include "uqsim/rlc.hpp"
#include "uqsim/scaling.hpp"
#include "uqsim/serialize.hpp"
#include "uqsim/switch_channel.hpp"
#include "uqsim/tomography.hpp"
#include "uqsim/version.hpp"

// Exit codes: 0 success, 2 user/config error, 3 numeric error.

namespace {

using namespace uqsim;

constexpr int kExitOk = 0;
constexpr int kExitUserError = 2;
constexpr int kExitNumericError = 3;

struct CommonOptions {
  std::string preset;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  unsigned threads = 0;  // 0 = resolve from environment
};

unsigned resolve_threads(unsigned flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("UQSIM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

ConfigMap resolve_config(const CommonOptions& opt, bool simulate_presets) {
  ConfigMap config;
  if (!opt.preset.empty()) {
    if (simulate_presets) {
      config = simulate_preset(opt.preset);
    } else {
      // Sweep presets are structured requests; handled by the caller.
    }
  }
  if (!opt.config_path.empty()) {
    for (const auto& [k, v] : load_config_file(opt.config_path)) config[k] = v;
  }
  for (const auto& kv : opt.overrides) apply_override(config, kv);
  return config;
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_simulate(const CommonOptions& opt, double theta_flag, bool theta_set,
                 std::uint64_t seed_flag, bool seed_set, const std::string& target_name) {
  ConfigMap config = resolve_config(opt, true);
  if (theta_set) config["input.theta_rad"] = format_g(theta_flag);
  if (seed_set) config["channel.seed"] = std::to_string(seed_flag);
  if (!target_name.empty()) config["fidelity.target"] = target_name;

  const SwitchSpec spec = switch_spec_from_config(config);
  const double theta = config_double(config, "input.theta_rad", std::numbers::pi);
  const std::string target = config_string(config, "fidelity.target", "input");
  if (target != "input" && target != "phi_minus")
    throw ConfigError("fidelity.target must be 'input' or 'phi_minus'");
  const FidelityTarget ft = target == "input" ? FidelityTarget::kInput : FidelityTarget::kPhiMinus;

  const DensityMatrix rho_in = outer_product(bell_phi_theta(theta));
  const ChannelOutcome outcome = monte_carlo_output(rho_in, spec, ft, resolve_threads(opt.threads));

  const std::string out_path = opt.out_path.empty() ? "outcome.json" : opt.out_path;
  write_file(out_path, channel_outcome_to_json(outcome, target));

  ConfigMap resolved;
  switch_spec_to_config(spec, resolved);
  resolved["input.theta_rad"] = format_g(theta);
  resolved["fidelity.target"] = target;
  if (!opt.preset.empty()) resolved["run.preset"] = opt.preset;
  write_metadata(out_path, resolved, "simulate");

  std::cout << "fidelity = " << format_g(outcome.fidelity) << "\n"
            << "purity = " << format_g(outcome.purity) << "\n"
            << "concurrence = " << format_g(outcome.concurrence) << "\n"
            << "throughput = " << format_g(outcome.throughput) << "\n"
            << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opt, std::uint64_t seed_flag, bool seed_set) {
  SweepRequest req;
  if (!opt.preset.empty()) {
    req = sweep_preset(opt.preset);
    // Allow overrides on top of a preset through the config machinery.
    ConfigMap patch;
    for (const auto& kv : opt.overrides) apply_override(patch, kv);
    if (!patch.empty() || !opt.config_path.empty()) {
      ConfigMap config;
      switch_spec_to_config(req.base, config);
      budget_to_config(req.budget, config);
      if (!opt.config_path.empty())
        for (const auto& [k, v] : load_config_file(opt.config_path)) config[k] = v;
      for (const auto& [k, v] : patch) config[k] = v;
      req.base = switch_spec_from_config(config);
      req.budget = budget_from_config(config);
    }
  } else {
    ConfigMap config = resolve_config(opt, false);
    if (config.empty()) throw ConfigError("sweep requires --preset or --config");
    req = sweep_from_config(config);
  }
  if (seed_set) req.base.seed = seed_flag;

  const std::vector<SweepRecord> records = run_sweep(req, resolve_threads(opt.threads));
  const std::string out_path = opt.out_path.empty() ? "sweep.csv" : opt.out_path;
  write_file(out_path, export_csv(records, req));

  ConfigMap resolved;
  switch_spec_to_config(req.base, resolved);
  budget_to_config(req.budget, resolved);
  resolved["sweep.axis1.name"] = req.axis1.name;
  if (req.axis2) resolved["sweep.axis2.name"] = req.axis2->name;
  if (!opt.preset.empty()) resolved["run.preset"] = opt.preset;
  write_metadata(out_path, resolved, "sweep");

  std::cout << "points = " << records.size() << "\n"
            << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_tomo_generate(const CommonOptions& opt, double theta, double werner_p, bool werner_set,
                      std::uint64_t counts, std::uint64_t seed, double background) {
  DensityMatrix rho = outer_product(bell_phi_theta(theta));
  if (werner_set) {
    if (!(werner_p >= 0.0) || werner_p > 1.0) throw ConfigError("--werner-p must be in [0, 1]");
    ComplexMatrix m = rho.matrix().scaled(Complex(werner_p, 0.0));
    for (std::size_t i = 0; i < 4; ++i) m(i, i) += Complex((1.0 - werner_p) / 4.0, 0.0);
    rho = DensityMatrix::unchecked(std::move(m));
  }
  const TomographyDataset data = simulate_counts(rho, counts, seed, background);
  const std::string out_path = opt.out_path.empty() ? "tomo.tsv" : opt.out_path;
  write_file(out_path, dataset_to_text(data));

  ConfigMap resolved;
  resolved["tomo.counts_per_setting"] = std::to_string(counts);
  resolved["tomo.seed"] = std::to_string(seed);
  resolved["tomo.background_rate"] = format_g(background);
  resolved["tomo.theta_rad"] = format_g(theta);
  if (werner_set) resolved["tomo.werner_p"] = format_g(werner_p);
  write_metadata(out_path, resolved, "tomo-generate");

  std::cout << "settings = 36\n"
            << "total_counts = " << data.total_counts() << "\n"
            << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_tomo_fit(const CommonOptions& opt, const std::string& data_path, double target_theta,
                 bool no_target, std::size_t max_iters, double tol) {
  const TomographyDataset data = dataset_from_text(read_file(data_path));
  data.require_complete();
  const MleResult result = mle_reconstruct(data, max_iters, tol);

  std::string out = "{\n";
  out += "  \"converged\": " + std::string(result.converged ? "true" : "false") + ",\n";
  out += "  \"iterations\": " + std::to_string(result.iterations) + ",\n";
  out += "  \"purity\": " + std::string(format_g(purity(result.rho))) + ",\n";
  out += "  \"concurrence\": " + std::string(format_g(concurrence(result.rho))) + ",\n";
  double fidelity = -1.0;
  if (!no_target) {
    fidelity = fidelity_to_pure(result.rho, bell_phi_theta(target_theta));
    out += "  \"fidelity_to_target\": " + std::string(format_g(fidelity)) + ",\n";
    out += "  \"target_theta_rad\": " + std::string(format_g(target_theta)) + ",\n";
  }
  // Splice in the matrix block from the canonical serializer.
  std::string rho_json = density_matrix_to_json(normalize(result.rho));
  const auto open = rho_json.find('[');
  const auto close = rho_json.rfind(']');
  out += "  \"rho\": " + rho_json.substr(open, close - open + 1) + "\n}\n";

  const std::string out_path = opt.out_path.empty() ? "reconstruction.json" : opt.out_path;
  write_file(out_path, out);

  if (!result.converged) std::cerr << "warning: reconstruction did not converge\n";
  std::cout << "purity = " << format_g(purity(result.rho)) << "\n"
            << "concurrence = " << format_g(concurrence(result.rho)) << "\n";
  if (!no_target) std::cout << "fidelity_to_target = " << format_g(fidelity) << "\n";
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_rlc(double l_nh, double c_pf, double zeta, double z_source, double band,
            const std::string& trace_path, double trace_resistance) {
  if (!trace_path.empty()) {
    // Parameter extraction from a sampled step response.
    std::vector<double> t, v;
    std::istringstream in(read_file(trace_path));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      double ti, vi;
      if (!(fields >> ti >> vi)) throw ConfigError("trace line must be 'time_s volts': " + line);
      t.push_back(ti);
      v.push_back(vi);
    }
    const StepTrace trace = StepTrace::from_samples(std::move(t), std::move(v));
    const DampingEstimate est = extract_damping(trace);
    std::cout << "zeta_estimate = " << format_g(est.zeta) << "\n"
              << "f_ring_hz_estimate = " << format_g(est.ring_frequency_hz) << "\n"
              << "peaks_used = " << est.peaks_used << "\n";
    const double omega_n = 2.0 * std::numbers::pi * est.ring_frequency_hz /
                           std::sqrt(1.0 - est.zeta * est.zeta);
    const LcEstimate lc = estimate_lc(est.ring_frequency_hz, est.zeta * omega_n, trace_resistance);
    std::cout << "inductance_h_estimate = " << format_g(lc.inductance_h) << "\n"
              << "capacitance_f_estimate = " << format_g(lc.capacitance_f) << "\n";
    return kExitOk;
  }

  const RlcParams params{l_nh * 1e-9, c_pf * 1e-12, zeta, z_source};
  params.validate();
  const double f_ring = ring_frequency(params.inductance_h, params.capacitance_f);
  const double r_total = total_resistance(zeta, params.inductance_h, params.capacitance_f);
  const double r_series = series_resistance(r_total, z_source);
  std::cout << "f_ring_hz = " << format_g(f_ring) << "\n"
            << "r_total_ohm = " << format_g(r_total) << "\n"
            << "r_series_ohm = " << format_g(r_series) << "\n"
            << "e24_nearest_ohm = " << format_g(e24_nearest(r_series)) << "\n"
            << "e24_recommended_ohm = " << format_g(e24_not_below(r_series)) << "\n";
  if (zeta < 1.0)
    std::cout << "settling_time_s = "
              << format_g(settling_time_estimate(zeta, params.inductance_h, params.capacitance_f, band)) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-switch channel simulator"};
  app.set_version_flag("--version", uqsim::kVersion);
  app.require_subcommand(1);

  CommonOptions sim_opt, sweep_opt, gen_opt, fit_opt;

  auto add_common = [](CLI::App* cmd, CommonOptions& opt, bool with_preset) {
    if (with_preset) cmd->add_option("--preset", opt.preset, "named parameter preset");
    cmd->add_option("--config", opt.config_path, "flat key = value config file");
    cmd->add_option("--set", opt.overrides, "override as key=value (repeatable)");
    cmd->add_option("--out", opt.out_path, "output file path");
    cmd->add_option("--threads", opt.threads, "worker threads (default: UQSIM_THREADS or 1)");
  };

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run the impairment channel on an entangled input");
  add_common(simulate, sim_opt, true);
  double sim_theta = std::numbers::pi;
  std::uint64_t sim_seed = 0;
  std::string sim_target;
  auto* sim_theta_opt = simulate->add_option("--theta", sim_theta, "input-state phase (radians)");
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "Monte-Carlo seed");
  simulate->add_option("--target", sim_target, "fidelity target: input | phi_minus");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate the channel over a parameter grid");
  add_common(sweep, sweep_opt, true);
  std::uint64_t sweep_seed = 0;
  auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "base seed (per-point seeds derive from it)");

  // tomo-generate
  auto* gen = app.add_subcommand("tomo-generate", "synthesize coincidence counts for a known state");
  add_common(gen, gen_opt, false);
  double gen_theta = std::numbers::pi;
  double gen_werner = 1.0;
  std::uint64_t gen_counts = 100000;
  std::uint64_t gen_seed = 1;
  double gen_background = 0.0;
  gen->add_option("--theta", gen_theta, "entangled-state phase (radians)");
  auto* gen_werner_opt = gen->add_option("--werner-p", gen_werner, "mix the state with identity: p rho + (1-p) I/4");
  gen->add_option("--counts", gen_counts, "pairs per analyzer setting")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "sampling seed");
  gen->add_option("--background", gen_background, "flat accidental rate per setting");

  // tomo-fit
  auto* fit = app.add_subcommand("tomo-fit", "maximum-likelihood reconstruction from counts");
  add_common(fit, fit_opt, false);
  std::string fit_data;
  double fit_theta = std::numbers::pi;
  bool fit_no_target = false;
  std::size_t fit_iters = 10000;
  double fit_tol = 1e-10;
  fit->add_option("--data", fit_data, "dataset file from tomo-generate")->required();
  fit->add_option("--target-theta", fit_theta, "phase of the target state for the fidelity report");
  fit->add_flag("--no-target", fit_no_target, "skip the fidelity-to-target report");
  fit->add_option("--max-iters", fit_iters, "iteration cap");
  fit->add_option("--tol", fit_tol, "update-norm convergence tolerance");

  // rlc
  auto* rlc = app.add_subcommand("rlc", "drive-circuit design numbers");
  double rlc_l = 2702.0, rlc_c = 41.2, rlc_zeta = 0.7, rlc_z = 50.0, rlc_band = 0.02;
  std::string rlc_trace;
  double rlc_trace_r = 50.0;
  rlc->add_option("--inductance-nh", rlc_l, "inductance in nH");
  rlc->add_option("--capacitance-pf", rlc_c, "capacitance in pF");
  rlc->add_option("--zeta", rlc_zeta, "damping-ratio target");
  rlc->add_option("--source-impedance", rlc_z, "generator impedance in ohms");
  rlc->add_option("--band", rlc_band, "settling band (fraction of final value)");
  rlc->add_option("--trace", rlc_trace, "two-column step-response file: extract zeta and f_ring instead");
  rlc->add_option("--trace-resistance", rlc_trace_r, "circuit resistance during the trace measurement (ohms)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUserError;
  }

  try {
    if (simulate->parsed())
      return cmd_simulate(sim_opt, sim_theta, sim_theta_opt->count() > 0, sim_seed,
                          sim_seed_opt->count() > 0, sim_target);
    if (sweep->parsed()) return cmd_sweep(sweep_opt, sweep_seed, sweep_seed_opt->count() > 0);
    if (gen->parsed())
      return cmd_tomo_generate(gen_opt, gen_theta, gen_werner, gen_werner_opt->count() > 0, gen_counts,
                               gen_seed, gen_background);
    if (fit->parsed()) return cmd_tomo_fit(fit_opt, fit_data, fit_theta, fit_no_target, fit_iters, fit_tol);
    if (rlc->parsed()) return cmd_rlc(rlc_l, rlc_c, rlc_zeta, rlc_z, rlc_band, rlc_trace, rlc_trace_r);
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumericError;
  } catch (const DegenerateStateError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumericError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  }
  return kExitUserError;
}
