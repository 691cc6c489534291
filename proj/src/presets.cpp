#include "uqsim/presets.hpp"

#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace uqsim {

namespace {

// Measured output-1 path: splitter extinction 23.25/24.79 dB, 3.50 dB
// polarization-dependent loss, interferometer extinction 32.24 dB,
// 1.87 dB facet coupling, 1.54 dB on-chip loss split over the two
// converter passes, 0.04 rad thermal phase noise.
ConfigMap table1_output1() {
  return {
      {"channel.per_db_0", "23.25"},   {"channel.per_db_1", "24.79"},
      {"channel.pdl_db", "3.50"},      {"channel.er_mzi_db", "32.24"},
      {"channel.coupling_db", "1.87"}, {"channel.prs_loss_db", "0.77"},
      {"channel.dimension_n", "2"},    {"channel.phase_sigma_rad", "0.04"},
      {"channel.mc_iterations", "20000"},
  };
}

// Measured output-2 path.
ConfigMap table1_output2() {
  return {
      {"channel.per_db_0", "19.36"},   {"channel.per_db_1", "19.69"},
      {"channel.pdl_db", "3.30"},      {"channel.er_mzi_db", "26.44"},
      {"channel.coupling_db", "1.87"}, {"channel.prs_loss_db", "0.715"},
      {"channel.dimension_n", "2"},    {"channel.phase_sigma_rad", "0.04"},
      {"channel.mc_iterations", "20000"},
  };
}

std::string format_theta(double multiple_of_pi) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", multiple_of_pi * std::numbers::pi);
  return buf;
}

}  // namespace

std::vector<std::string> simulate_preset_names() {
  return {"ideal", "table1-output1", "table1-output2", "to-switching", "eo-switching"};
}

std::vector<std::string> sweep_preset_names() { return {"fig5a", "fig5b", "fig5c"}; }

ConfigMap simulate_preset(const std::string& name) {
  if (name == "ideal") return {};
  if (name == "table1-output1") return table1_output1();
  if (name == "table1-output2") return table1_output2();
  if (name == "to-switching") {
    // Thermo-optic switching of the theta = -0.49 pi entangled state.
    ConfigMap c = table1_output1();
    c["input.theta_rad"] = format_theta(-0.49);
    return c;
  }
  if (name == "eo-switching") {
    // Electro-optic switching of the theta = -0.58 pi entangled state.
    ConfigMap c = table1_output2();
    c["input.theta_rad"] = format_theta(-0.58);
    return c;
  }
  throw std::invalid_argument("unknown simulate preset: " + name);
}

SweepRequest sweep_preset(const std::string& name) {
  SweepRequest req;  // base spec is ideal, deterministic (sigma = 0, M = 1)
  if (name == "fig5a") {
    // Fidelity vs polarization-dependent loss per splitter.
    SweepAxis axis{"pdl_db", {}};
    for (int i = 0; i <= 70; ++i) axis.values.push_back(0.05 * i);
    req.axis1 = axis;
    req.metrics = {"fidelity"};
    return req;
  }
  if (name == "fig5b") {
    // Fidelity vs splitter extinction ratio and interferometer
    // extinction ratio at 1024 ports.
    req.base.dimension_n = 1024;
    req.budget.dimension_n = 1024;
    SweepAxis per{"per_db", {}};
    SweepAxis er{"er_mzi_db", {}};
    for (int db = 15; db <= 40; ++db) {
      per.values.push_back(db);
      er.values.push_back(db);
    }
    req.axis1 = per;
    req.axis2 = er;
    req.metrics = {"fidelity"};
    return req;
  }
  if (name == "fig5c") {
    // Fidelity and insertion loss vs dimension at the measured
    // interferometer extinction ratio.
    req.base.er_mzi_db = 32.24;
    SweepAxis axis{"dimension_n", {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024}};
    req.axis1 = axis;
    req.metrics = {"fidelity", "insertion_loss_db"};
    return req;
  }
  throw std::invalid_argument("unknown sweep preset: " + name);
}

}  // namespace uqsim
