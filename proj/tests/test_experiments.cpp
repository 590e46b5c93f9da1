#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "dps/errors.hpp"
#include "dps/experiments.hpp"

using namespace dps;

namespace {

ScenarioSpec single_spec(double deg) {
  ScenarioSpec s;
  s.scenario = {{Angle::degrees(deg)}, 0};
  return s;
}

ScenarioSpec clutter_spec() {
  ScenarioSpec s;
  s.scenario = {{Angle::degrees(-47.0), Angle::degrees(30.0), Angle::degrees(49.0)}, 2};
  s.gamma = 0.1;
  return s;
}

double peak_deg(const BeampatternTrace& t) {
  const auto it = std::max_element(t.power_linear.begin(), t.power_linear.end());
  return t.angles[static_cast<std::size_t>(it - t.power_linear.begin())].deg();
}

}  // namespace

TEST_CASE("scenario draws are reproducible and well separated") {
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    const auto s = draw_scenario(42, trial, 3);
    const auto again = draw_scenario(42, trial, 3);
    CHECK(s.targets == again.targets);
    CHECK(s.desired_index == again.desired_index);
    REQUIRE(s.targets.size() == 3);
    CHECK(s.desired_index < 3);
    for (std::size_t i = 0; i < 3; ++i) {
      const double d = s.targets[i].deg();
      CHECK(std::abs(d) <= kDrawLimitDeg + 1e-9);
      CHECK(std::abs(d - std::round(d)) < 1e-9);
      for (std::size_t j = 0; j < i; ++j)
        CHECK(std::abs(d - s.targets[j].deg()) >= kMinSeparationDeg - 1e-9);
    }
  }
  CHECK(draw_scenario(1, 0, 3).targets != draw_scenario(2, 0, 3).targets);
  CHECK_THROWS_AS(draw_scenario(1, 0, 0), ContractError);
  CHECK_THROWS_AS(draw_scenario(1, 0, 1000), ContractError);
}

TEST_CASE("single target: fine phase shifters track the reference") {
  auto spec = single_spec(23.0);
  spec.bits = 16;
  const auto r = run_single_target(spec);
  CHECK(r.rms_dps_db < 0.1);
}

TEST_CASE("single target: all three beams point at the target") {
  for (double deg : {-61.0, -12.0, 0.0, 7.0, 38.0, 70.0}) {
    const auto r = run_single_target(single_spec(deg));
    const double step = r.reference.angles[1].deg() - r.reference.angles[0].deg();
    CHECK(std::abs(peak_deg(r.reference) - deg) <= step + 1e-9);
    CHECK(std::abs(peak_deg(r.dps) - deg) <= step + 1e-9);
    // Phase-only quantization squints the beam by a few tenths of a degree.
    CHECK(std::abs(peak_deg(r.pesa) - deg) <= 0.5);
    CHECK(r.reference.angles == r.dps.angles);
    CHECK(r.reference.angles == r.pesa.angles);
    CHECK(std::isfinite(r.rms_dps_db));
    CHECK(r.levels.size() == 1);
  }
}

TEST_CASE("single target: DPS usually beats quantized PESA") {
  int wins = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    ScenarioSpec spec;
    spec.scenario = draw_scenario(5, t, 1);
    const auto r = run_single_target(spec);
    wins += r.rms_dps_db <= r.rms_pesa_db;
  }
  CHECK(wins >= 80);
}

TEST_CASE("single target rejects several targets") {
  auto spec = clutter_spec();
  CHECK_THROWS_AS(run_single_target(spec), ContractError);
}

TEST_CASE("clutter run on the published scenario") {
  const auto r = run_mvdr_clutter(clutter_spec());
  REQUIRE(r.levels.size() == 3);
  CHECK(std::abs(peak_deg(r.reference) - 49.0) <= 0.1 + 1e-9);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(r.levels[k].dps_db <= -32.0);
    CHECK(r.levels[k].reference_db < r.levels[k].dps_db);
  }
  CHECK(r.levels[2].reference_db == 0.0);
  CHECK(r.rms_dps_db < r.rms_pesa_db);
}

TEST_CASE("clutter run preconditions") {
  auto no_gamma = clutter_spec();
  no_gamma.gamma.reset();
  CHECK_THROWS_AS(run_mvdr_clutter(no_gamma), ContractError);
  CHECK_THROWS_AS(run_mvdr_clutter(single_spec(10.0)), ContractError);
}

TEST_CASE("Monte Carlo rows and ordering") {
  ScenarioSpec base;
  base.gamma = 0.1;
  MonteCarloPlan plan{{2, 3}, {1.0, 2.0}, 10, 3};
  const auto sweep = run_monte_carlo(base, plan);
  REQUIRE(sweep.rows.size() == 4);
  CHECK(sweep.rows[0].bits == 2);
  CHECK(sweep.rows[0].norm_target == 1.0);
  CHECK(sweep.rows[1].norm_target == 2.0);
  CHECK(sweep.rows[2].bits == 3);
  for (const auto& row : sweep.rows) {
    CHECK(row.trials == 10);
    CHECK(std::isfinite(row.mean_rms_dps_db));
    CHECK(row.mean_rms_dps_db >= 0.0);
    CHECK(row.mean_rms_pesa_db >= 0.0);
  }
  CHECK(sweep.rows[0].mean_rms_pesa_db == sweep.rows[1].mean_rms_pesa_db);

  CHECK_THROWS_AS(run_monte_carlo(base, {{}, {2.0}, 10, 3}), ContractError);
  CHECK_THROWS_AS(run_monte_carlo(base, {{4}, {2.0}, 0, 3}), ContractError);
  CHECK_THROWS_AS(run_monte_carlo(base, {{4}, {2.5}, 10, 3}), DomainError);
}

TEST_CASE("Monte Carlo error shrinks with bits when every candidate is tried") {
  ScenarioSpec base;
  base.gamma = 0.1;
  base.candidates = 16;  // clamped to 2^B, i.e. exhaustive per element
  const auto sweep = run_monte_carlo(base, {{2, 3, 4}, {2.0}, 100, 3});
  CHECK(sweep.rows[1].mean_rms_dps_db <= sweep.rows[0].mean_rms_dps_db);
  CHECK(sweep.rows[2].mean_rms_dps_db <= sweep.rows[1].mean_rms_dps_db);
}

TEST_CASE("Monte Carlo is reproducible for a seed") {
  ScenarioSpec base;
  base.gamma = 0.1;
  base.seed = 77;
  const MonteCarloPlan plan{{3, 5}, {1.5, 2.0}, 16, 3};
  const auto a = run_monte_carlo(base, plan);
  const auto b = run_monte_carlo(base, plan);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].mean_rms_dps_db == b.rows[i].mean_rms_dps_db);
    CHECK(a.rows[i].mean_rms_pesa_db == b.rows[i].mean_rms_pesa_db);
  }
  base.seed = 78;
  CHECK(run_monte_carlo(base, plan).rows[0].mean_rms_dps_db != a.rows[0].mean_rms_dps_db);
}
