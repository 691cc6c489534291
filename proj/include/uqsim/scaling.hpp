#ifndef UQSIM_SCALING_HPP
#define UQSIM_SCALING_HPP

#include <optional>
#include <string>
#include <vector>

#include "uqsim/switch_channel.hpp"

// Parameter sweeps, threshold bisection, and the insertion-loss budget
// for the dimension-scaling analysis.  All sweep evaluations take the
// canonical (|00> - |11>)/sqrt(2) input.

namespace uqsim {

struct LossBudget {
  double waveguide_loss_db_per_cm = 0.2;
  double stage_length_cm = 2.1;  // calibrated so the default budget matches
                                 // the headline loss at 1024 ports
  double coupler_loss_db_per_facet = 1.87;
  unsigned facets = 2;
  unsigned dimension_n = 1024;

  void validate() const;
};

struct SweepAxis {
  std::string name;            // SwitchSpec or LossBudget field; "per_db" sets both modes
  std::vector<double> values;  // non-empty, ascending
};

struct SweepRequest {
  SwitchSpec base;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  // Subset of {fidelity, purity, concurrence, throughput, insertion_loss_db}.
  std::vector<std::string> metrics{"fidelity", "purity", "concurrence", "throughput"};
  LossBudget budget;

  void validate() const;
};

struct SweepRecord {
  double axis1_value = 0.0;
  std::optional<double> axis2_value;
  double fidelity = 0.0;
  double purity = 0.0;
  double concurrence = 0.0;
  double throughput = 0.0;
  double insertion_loss_db = 0.0;
};

// Applies a named parameter to the spec and/or budget.  Unknown names
// throw std::invalid_argument.
void set_parameter(SwitchSpec& spec, LossBudget& budget, const std::string& name, double value);

// One record per grid point in axis2-major/axis1-minor linear order;
// point seed = base seed XOR linear index.
std::vector<SweepRecord> run_sweep(const SweepRequest& req, unsigned threads = 1);

// Bisection for the parameter value where the deterministic (zero phase
// noise, single sample) channel fidelity crosses target_fidelity.
// Requires a sign change over [lo, hi]; resolves to |hi - lo| < 1e-3.
double find_threshold(const SwitchSpec& spec, const std::string& parameter, double target_fidelity,
                      double lo, double hi);

// facets * coupler_loss + depth(N) * stage_length * waveguide_loss.
double insertion_loss(const LossBudget& budget);

struct DimensionRecord {
  unsigned dimension_n;
  double fidelity;
  double insertion_loss_db;
};

// Deterministic fidelity and insertion loss per dimension.
std::vector<DimensionRecord> fidelity_vs_dimension(const SwitchSpec& spec,
                                                   const std::vector<unsigned>& n_values,
                                                   const LossBudget& budget);

// Full-precision CSV: header naming axes and metrics, one row per point.
std::string export_csv(const std::vector<SweepRecord>& records, const SweepRequest& req);

}  // namespace uqsim

#endif
