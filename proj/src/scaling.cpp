#include "uqsim/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "uqsim/errors.hpp"

namespace uqsim {

namespace {

bool sorted_ascending(const std::vector<double>& v) {
  return std::is_sorted(v.begin(), v.end());
}

const std::vector<std::string> kKnownMetrics = {"fidelity", "purity", "concurrence", "throughput",
                                                "insertion_loss_db"};

// Deterministic channel fidelity of the canonical Bell input: zero phase
// noise, single sample.
double deterministic_fidelity(SwitchSpec spec) {
  spec.phase_sigma_rad = 0.0;
  spec.mc_iterations = 1;
  const DensityMatrix rho_in = outer_product(bell_phi_theta(std::numbers::pi));
  return monte_carlo_output(rho_in, spec, FidelityTarget::kInput).fidelity;
}

}  // namespace

void LossBudget::validate() const {
  if (!(waveguide_loss_db_per_cm >= 0.0) || !(stage_length_cm >= 0.0) || !(coupler_loss_db_per_facet >= 0.0))
    throw std::invalid_argument("LossBudget: loss terms must be >= 0");
  if (dimension_n < 2 || (dimension_n & (dimension_n - 1)) != 0)
    throw std::invalid_argument("LossBudget: dimension_n must be a power of two >= 2");
}

void SweepRequest::validate() const {
  base.validate();
  budget.validate();
  auto check_axis = [](const SweepAxis& axis) {
    if (axis.values.empty()) throw std::invalid_argument("sweep axis values must be non-empty");
    if (!sorted_ascending(axis.values)) throw std::invalid_argument("sweep axis values must be sorted ascending");
    SwitchSpec probe;
    LossBudget probe_budget;
    set_parameter(probe, probe_budget, axis.name, axis.values.front());  // name check
  };
  check_axis(axis1);
  if (axis2) check_axis(*axis2);
  if (metrics.empty()) throw std::invalid_argument("sweep metric set must be non-empty");
  for (const auto& m : metrics)
    if (std::find(kKnownMetrics.begin(), kKnownMetrics.end(), m) == kKnownMetrics.end())
      throw std::invalid_argument("unknown sweep metric: " + m);
}

void set_parameter(SwitchSpec& spec, LossBudget& budget, const std::string& name, double value) {
  if (name == "per_db") {
    spec.per_db_0 = spec.per_db_1 = value;
  } else if (name == "per_db_0") {
    spec.per_db_0 = value;
  } else if (name == "per_db_1") {
    spec.per_db_1 = value;
  } else if (name == "pdl_db") {
    spec.pdl_db = value;
  } else if (name == "coupling_db") {
    spec.coupling_db = value;
  } else if (name == "prs_loss_db") {
    spec.prs_loss_db = value;
  } else if (name == "mzi_loss_db") {
    spec.mzi_loss_db = value;
  } else if (name == "er_mzi_db") {
    spec.er_mzi_db = value;
  } else if (name == "phase_offset_rad") {
    spec.phase_offset_rad = value;
  } else if (name == "phase_sigma_rad") {
    spec.phase_sigma_rad = value;
  } else if (name == "dimension_n") {
    const auto n = static_cast<unsigned>(value);
    if (static_cast<double>(n) != value) throw std::invalid_argument("dimension_n must be integral");
    spec.dimension_n = n;
    budget.dimension_n = n;
  } else if (name == "waveguide_loss_db_per_cm") {
    budget.waveguide_loss_db_per_cm = value;
  } else if (name == "stage_length_cm") {
    budget.stage_length_cm = value;
  } else if (name == "coupler_loss_db_per_facet") {
    budget.coupler_loss_db_per_facet = value;
  } else if (name == "facets") {
    budget.facets = static_cast<unsigned>(value);
  } else {
    throw std::invalid_argument("unknown sweep parameter: " + name);
  }
}

std::vector<SweepRecord> run_sweep(const SweepRequest& req, unsigned threads) {
  req.validate();
  const std::size_t n1 = req.axis1.values.size();
  const std::size_t n2 = req.axis2 ? req.axis2->values.size() : 1;
  const std::size_t total = n1 * n2;
  std::vector<SweepRecord> records(total);

  const DensityMatrix rho_in = outer_product(bell_phi_theta(std::numbers::pi));

  auto eval_point = [&](std::size_t idx) {
    const std::size_t i1 = idx % n1;
    const std::size_t i2 = idx / n1;
    SwitchSpec spec = req.base;
    LossBudget budget = req.budget;
    set_parameter(spec, budget, req.axis1.name, req.axis1.values[i1]);
    if (req.axis2) set_parameter(spec, budget, req.axis2->name, req.axis2->values[i2]);
    spec.seed = req.base.seed ^ static_cast<std::uint64_t>(idx);

    const ChannelOutcome outcome = monte_carlo_output(rho_in, spec, FidelityTarget::kInput);
    SweepRecord rec;
    rec.axis1_value = req.axis1.values[i1];
    if (req.axis2) rec.axis2_value = req.axis2->values[i2];
    rec.fidelity = outcome.fidelity;
    rec.purity = outcome.purity;
    rec.concurrence = outcome.concurrence;
    rec.throughput = outcome.throughput;
    rec.insertion_loss_db = insertion_loss(budget);
    records[idx] = rec;
  };

  if (threads <= 1 || total == 1) {
    for (std::size_t i = 0; i < total; ++i) eval_point(i);
  } else {
    const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < total; i += n_workers) eval_point(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  return records;
}

double find_threshold(const SwitchSpec& spec, const std::string& parameter, double target_fidelity,
                      double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("find_threshold: bracket must satisfy lo < hi");
  LossBudget budget;
  auto objective = [&](double x) {
    SwitchSpec s = spec;
    LossBudget b = budget;
    set_parameter(s, b, parameter, x);
    return deterministic_fidelity(s) - target_fidelity;
  };
  double flo = objective(lo);
  double fhi = objective(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw BracketError("find_threshold: fidelity does not cross the target inside the bracket");
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = objective(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double insertion_loss(const LossBudget& budget) {
  budget.validate();
  const unsigned depth = switch_depth(budget.dimension_n);
  return budget.facets * budget.coupler_loss_db_per_facet +
         depth * budget.stage_length_cm * budget.waveguide_loss_db_per_cm;
}

std::vector<DimensionRecord> fidelity_vs_dimension(const SwitchSpec& spec,
                                                   const std::vector<unsigned>& n_values,
                                                   const LossBudget& budget) {
  std::vector<DimensionRecord> out;
  out.reserve(n_values.size());
  for (unsigned n : n_values) {
    SwitchSpec s = spec;
    s.dimension_n = n;
    LossBudget b = budget;
    b.dimension_n = n;
    out.push_back({n, deterministic_fidelity(s), insertion_loss(b)});
  }
  return out;
}

std::string export_csv(const std::vector<SweepRecord>& records, const SweepRequest& req) {
  std::string out = req.axis1.name;
  if (req.axis2) out += "," + req.axis2->name;
  for (const auto& m : req.metrics) out += "," + m;
  out += "\n";

  char buf[64];
  auto append = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
  };
  for (const auto& rec : records) {
    append(rec.axis1_value);
    if (rec.axis2_value) {
      out += ",";
      append(*rec.axis2_value);
    }
    for (const auto& m : req.metrics) {
      out += ",";
      if (m == "fidelity") append(rec.fidelity);
      else if (m == "purity") append(rec.purity);
      else if (m == "concurrence") append(rec.concurrence);
      else if (m == "throughput") append(rec.throughput);
      else append(rec.insertion_loss_db);
    }
    out += "\n";
  }
  return out;
}

}  // namespace uqsim
