#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "uqsim/errors.hpp"
#include "uqsim/scaling.hpp"

#include "support.hpp"

using namespace uqsim;

namespace {

// Closed-form thresholds for the single-impairment channel, derived from
// the normalized Bell-state overlap.  These provide the independent
// route for the bisection checks.
//
// Loss asymmetry t between the logical rails: F = (1+t)^2 / (2(1+t^2)).
double pdl_threshold_analytic(double target) {
  const double c = 2.0 * target;  // solve c t^2/2 ... rearranged quadratic
  // (1+t)^2 = 2T(1+t^2)  =>  (2T-1) t^2 - 2t + (2T-1) = 0
  const double a = c - 1.0;
  const double t = (1.0 - std::sqrt(1.0 - a * a)) / a;
  // Two splitter passes: total amplitude ratio 10^(-pdl/10).
  return -10.0 * std::log10(t);
}

// Crosstalk eps at both splitters: F = 1 / (1 + beta^2), beta = 2 eps sqrt(1-eps^2).
double per_threshold_analytic(double target) {
  const double beta2 = 1.0 / target - 1.0;
  const double eps2 = (1.0 - std::sqrt(1.0 - beta2)) / 2.0;
  return -20.0 * std::log10(std::sqrt(eps2));
}

}  // namespace

TEST_CASE("insertion_loss arithmetic") {
  LossBudget coupler_only;
  coupler_only.waveguide_loss_db_per_cm = 0.0;
  CHECK(insertion_loss(coupler_only) == 2 * 1.87);  // exact loss floor

  LossBudget defaults;  // 0.2 dB/cm, 2.1 cm per stage, 1024 ports
  CHECK(insertion_loss(defaults) > 8.0);

  LossBudget small;
  small.coupler_loss_db_per_facet = 0.0;
  small.stage_length_cm = 1.0;
  small.dimension_n = 2;
  CHECK(insertion_loss(small) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("insertion_loss is additive in the waveguide term") {
  // Dyadic values so the additivity holds bit-exactly.
  LossBudget base;
  base.coupler_loss_db_per_facet = 2.0;
  base.waveguide_loss_db_per_cm = 0.25;
  base.stage_length_cm = 1.25;
  LossBudget doubled = base;
  doubled.stage_length_cm = 2.5;
  const double floor = 2 * base.coupler_loss_db_per_facet;
  CHECK(insertion_loss(doubled) - floor == 2.0 * (insertion_loss(base) - floor));
}

TEST_CASE("run_sweep: single ideal point") {
  SweepRequest req;
  req.axis1 = SweepAxis{"pdl_db", {0.0}};
  const std::vector<SweepRecord> records = run_sweep(req);
  REQUIRE(records.size() == 1);
  CHECK(std::abs(records[0].fidelity - 1.0) < 1e-12);
}

TEST_CASE("run_sweep: fidelity decreases along a loss-asymmetry axis") {
  SweepRequest req;
  req.axis1 = SweepAxis{"pdl_db", {0.0, 0.64, 3.5}};
  const std::vector<SweepRecord> records = run_sweep(req);
  REQUIRE(records.size() == 3);
  CHECK(records[0].fidelity > records[1].fidelity);
  CHECK(records[1].fidelity > records[2].fidelity);
}

TEST_CASE("run_sweep: two-axis grid rises along both extinction axes") {
  SweepRequest req;
  req.base.dimension_n = 16;
  req.axis1 = SweepAxis{"per_db", {18.0, 24.0, 30.0}};
  req.axis2 = SweepAxis{"er_mzi_db", {15.0, 25.0, 35.0}};
  const std::vector<SweepRecord> records = run_sweep(req);
  REQUIRE(records.size() == 9);
  // axis1-minor linear order: records[i2*3 + i1].
  for (int i2 = 0; i2 < 3; ++i2)
    for (int i1 = 0; i1 + 1 < 3; ++i1)
      CHECK(records[i2 * 3 + i1].fidelity < records[i2 * 3 + i1 + 1].fidelity);
  for (int i1 = 0; i1 < 3; ++i1)
    for (int i2 = 0; i2 + 1 < 3; ++i2)
      CHECK(records[i2 * 3 + i1].fidelity < records[(i2 + 1) * 3 + i1].fidelity);
}

TEST_CASE("run_sweep is deterministic and ordered across thread counts") {
  SweepRequest req;
  req.base.phase_sigma_rad = 0.05;
  req.base.mc_iterations = 2000;
  req.base.seed = 99;
  req.axis1 = SweepAxis{"pdl_db", {0.0, 0.5, 1.0, 1.5, 2.0, 2.5}};
  const auto a = run_sweep(req, 1);
  const auto b = run_sweep(req, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].fidelity == b[i].fidelity);
    CHECK(a[i].throughput == b[i].throughput);
  }
}

TEST_CASE("sweep validation") {
  SweepRequest req;
  req.axis1 = SweepAxis{"pdl_db", {}};
  CHECK_THROWS_AS(run_sweep(req), std::invalid_argument);

  req.axis1 = SweepAxis{"pdl_db", {2.0, 1.0}};
  CHECK_THROWS_AS(run_sweep(req), std::invalid_argument);

  req.axis1 = SweepAxis{"no_such_field", {1.0}};
  CHECK_THROWS_AS(run_sweep(req), std::invalid_argument);

  req.axis1 = SweepAxis{"pdl_db", {1.0}};
  req.metrics = {"fidelity", "volume"};
  CHECK_THROWS_AS(run_sweep(req), std::invalid_argument);
}

TEST_CASE("find_threshold recovers the model's analytic crossings") {
  const SwitchSpec ideal;

  const double pdl = find_threshold(ideal, "pdl_db", 0.99, 0.01, 3.0);
  CHECK(pdl == doctest::Approx(pdl_threshold_analytic(0.99)).epsilon(5e-3));

  const double per = find_threshold(ideal, "per_db", 0.99, 15.0, 40.0);
  CHECK(per == doctest::Approx(per_threshold_analytic(0.99)).epsilon(5e-3));

  // Substituting the crossing back reproduces the target.
  for (const auto& [name, value] : {std::pair<std::string, double>{"pdl_db", pdl}, {"per_db", per}}) {
    SwitchSpec spec = ideal;
    LossBudget budget;
    set_parameter(spec, budget, name, value);
    spec.mc_iterations = 1;
    const double fid =
        monte_carlo_output(outer_product(bell_phi_theta(std::numbers::pi)), spec).fidelity;
    CHECK(std::abs(fid - 0.99) < 1e-3);
  }
}

TEST_CASE("find_threshold rejects bracket without a crossing") {
  const SwitchSpec ideal;
  CHECK_THROWS_AS(find_threshold(ideal, "pdl_db", 1.0, 0.01, 3.0), BracketError);
  CHECK_THROWS_AS(find_threshold(ideal, "pdl_db", 0.99, 1.5, 3.0), BracketError);
}

TEST_CASE("fidelity_vs_dimension reproduces the extinction-ratio scaling") {
  SwitchSpec spec;
  spec.er_mzi_db = 32.24;
  LossBudget budget;
  const std::vector<unsigned> dims{2, 8, 64, 1024};
  const auto records = fidelity_vs_dimension(spec, dims, budget);
  REQUIRE(records.size() == 4);
  CHECK(records.back().fidelity >= 0.994);
  // Weakly decreasing in the port count.
  for (std::size_t i = 0; i + 1 < records.size(); ++i)
    CHECK(records[i].fidelity >= records[i + 1].fidelity - 1e-15);

  spec.er_mzi_db = 35.0;
  CHECK(fidelity_vs_dimension(spec, {1024}, budget)[0].fidelity >= 0.997);

  // Closed form for the extinction-only channel: (1 + p_s)/2.
  spec.er_mzi_db = 24.0;
  for (unsigned n : dims) {
    SwitchSpec probe = spec;
    probe.dimension_n = n;
    const double expected = (1.0 + success_probability(probe)) / 2.0;
    CHECK(std::abs(fidelity_vs_dimension(spec, {n}, budget)[0].fidelity - expected) < 1e-9);
  }
}

TEST_CASE("converter noise is independent of the switch dimension") {
  SwitchSpec spec;
  spec.per_db_0 = 23.25;
  spec.per_db_1 = 24.79;
  spec.pdl_db = 3.5;
  LossBudget budget;
  const auto records = fidelity_vs_dimension(spec, {2, 8, 64, 1024}, budget);
  for (std::size_t i = 1; i < records.size(); ++i)
    CHECK(std::abs(records[i].fidelity - records[0].fidelity) < 1e-9);
}

TEST_CASE("fidelity_vs_dimension with ideal impairments is unity") {
  const SwitchSpec ideal;
  LossBudget budget;
  for (const auto& rec : fidelity_vs_dimension(ideal, {2, 4, 16, 256, 1024}, budget))
    CHECK(std::abs(rec.fidelity - 1.0) < 1e-12);
}

TEST_CASE("export_csv shapes") {
  SweepRequest req;
  req.axis1 = SweepAxis{"pdl_db", {0.0}};
  req.metrics = {"fidelity"};

  auto line_count = [](const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
      if (c == '\n') ++n;
    return n;
  };

  CHECK(line_count(export_csv({}, req)) == 1);  // header only

  const auto one = run_sweep(req);
  CHECK(line_count(export_csv(one, req)) == 2);

  SweepRequest grid;
  grid.axis1 = SweepAxis{"per_db", {20.0, 25.0, 30.0}};
  grid.axis2 = SweepAxis{"er_mzi_db", {20.0, 25.0, 30.0}};
  grid.metrics = {"fidelity", "throughput"};
  const auto nine = run_sweep(grid);
  const std::string csv = export_csv(nine, grid);
  CHECK(line_count(csv) == 10);
  CHECK(csv.rfind("per_db,er_mzi_db,fidelity,throughput\n", 0) == 0);
}
