#include "dps/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dps/dps_quantize.hpp"
#include "dps/errors.hpp"
#include "dps/serial.hpp"
#include "kernels.hpp"

namespace dps {

namespace {

constexpr double kDefaultGamma = 0.1;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::size_t> target_indices(std::span<const Angle> grid, const TargetScenario& s) {
  std::vector<std::size_t> idx;
  idx.reserve(s.targets.size());
  for (Angle t : s.targets) idx.push_back(nearest_index(grid, t));
  return idx;
}

BeampatternTrace serial_trace(const ArrayConfig& config, std::span<const cplx> w,
                              std::span<const Angle> grid, double floor_db) {
  BeampatternTrace trace;
  trace.angles.assign(grid.begin(), grid.end());
  trace.power_linear = serial::beampattern_powers(config, w, grid);
  trace.power_db = normalize_db(trace.power_linear, floor_db);
  trace.floor_db = floor_db;
  return trace;
}

void fill_levels(TrialResult& r, const TargetScenario& scenario) {
  for (Angle t : scenario.targets)
    r.levels.push_back({t, level_db_at(r.reference, t), level_db_at(r.dps, t), level_db_at(r.pesa, t)});
}

void validate_spec(const ScenarioSpec& spec) {
  validate(spec.config);
  validate(spec.scenario);
  if (!(spec.grid_step_deg > 0.0)) throw ContractError("grid step must be positive");
}

}  // namespace

TargetScenario draw_scenario(std::uint64_t seed, std::uint64_t trial, std::size_t k) {
  const auto span = static_cast<std::size_t>(2.0 * kDrawLimitDeg / kMinSeparationDeg) + 1;
  if (k == 0 || k > span) throw ContractError("cannot draw that many separated targets");

  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(trial)));
  const int limit = static_cast<int>(kDrawLimitDeg);
  std::uniform_int_distribution<int> angle(-limit, limit);

  std::vector<int> degrees;
  while (degrees.size() < k) {
    const int candidate = angle(rng);
    const bool clear = std::all_of(degrees.begin(), degrees.end(), [&](int d) {
      return std::abs(d - candidate) >= kMinSeparationDeg;
    });
    if (clear) degrees.push_back(candidate);
  }
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);

  TargetScenario scenario;
  for (int d : degrees) scenario.targets.push_back(Angle::degrees(d));
  scenario.desired_index = pick(rng);
  return scenario;
}

TrialResult run_single_target(const ScenarioSpec& spec) {
  validate_spec(spec);
  if (spec.scenario.targets.size() != 1) throw ContractError("single-target run needs K = 1");

  const auto grid = default_grid(spec.grid_step_deg);
  const PhaseGrid phases(spec.bits);
  const ComplexWeights w = steering_beamformer(spec.config, spec.scenario.desired());

  TrialResult r;
  r.reference = beampattern_trace(spec.config, w, grid, spec.floor_db);
  r.dps = beampattern_trace(spec.config,
                            approximate(w, phases, spec.candidates, spec.norm_target).realized,
                            grid, spec.floor_db);
  r.pesa = beampattern_trace(spec.config, quantize_pesa(w, phases), grid, spec.floor_db);
  r.rms_dps_db = rms_diff_db(r.reference, r.dps);
  r.rms_pesa_db = rms_diff_db(r.reference, r.pesa);
  fill_levels(r, spec.scenario);
  return r;
}

TrialResult run_mvdr_clutter(const ScenarioSpec& spec) {
  validate_spec(spec);
  if (spec.scenario.targets.size() < 2) throw ContractError("clutter run needs K >= 2");
  if (!spec.gamma) throw ContractError("clutter run needs an MVDR gamma");

  const auto grid = default_grid(spec.grid_step_deg);
  const PhaseGrid phases(spec.bits);
  const ComplexWeights mvdr = mvdr_beamformer(spec.config, spec.scenario, {*spec.gamma});
  const ComplexWeights steer = steering_beamformer(spec.config, spec.scenario.desired());

  TrialResult r;
  r.reference = beampattern_trace(spec.config, mvdr, grid, spec.floor_db);
  r.dps = beampattern_trace(spec.config,
                            approximate(mvdr, phases, spec.candidates, spec.norm_target).realized,
                            grid, spec.floor_db);
  r.pesa = beampattern_trace(spec.config, quantize_pesa(steer, phases), grid, spec.floor_db);
  const auto at = target_indices(grid, spec.scenario);
  r.rms_dps_db = rms_diff_db(r.reference, r.dps, at);
  r.rms_pesa_db = rms_diff_db(r.reference, r.pesa, at);
  fill_levels(r, spec.scenario);
  return r;
}

SweepResult run_monte_carlo(const ScenarioSpec& base, const MonteCarloPlan& plan, Execution exec) {
  detail::validate_plan(plan);
  validate(base.config);
  std::vector<detail::TrialErrors> per_trial(plan.trials);
  const auto count = static_cast<std::ptrdiff_t>(plan.trials);
#pragma omp parallel for schedule(dynamic) num_threads(detail::resolve_workers(exec))
  for (std::ptrdiff_t t = 0; t < count; ++t)
    per_trial[t] = detail::evaluate_trial(base, plan, static_cast<std::uint64_t>(t));
  return detail::aggregate(plan, per_trial);
}

namespace detail {

void validate_plan(const MonteCarloPlan& plan) {
  if (plan.bits_sweep.empty() || plan.norm_sweep.empty())
    throw ContractError("sweep needs at least one bit width and one normalization");
  if (plan.trials == 0) throw ContractError("sweep needs at least one trial");
  if (plan.targets_per_trial < 1) throw ContractError("sweep needs at least one target per trial");
  for (int b : plan.bits_sweep)
    if (b < 1 || b > PhaseGrid::kMaxBits) throw ContractError("bit width out of range");
  for (double n : plan.norm_sweep)
    if (!(n > 0.0 && n <= 2.0)) throw DomainError("normalization target must be in (0, 2]");
}

TrialErrors evaluate_trial(const ScenarioSpec& base, const MonteCarloPlan& plan,
                           std::uint64_t trial) {
  const TargetScenario scenario = draw_scenario(base.seed, trial, plan.targets_per_trial);
  const auto grid = default_grid(base.grid_step_deg);
  const auto at = target_indices(grid, scenario);

  const ComplexWeights mvdr =
      mvdr_beamformer(base.config, scenario, {base.gamma.value_or(kDefaultGamma)});
  const ComplexWeights steer = steering_beamformer(base.config, scenario.desired());
  const BeampatternTrace reference = serial_trace(base.config, mvdr, grid, base.floor_db);

  TrialErrors errors;
  errors.dps_db.reserve(plan.bits_sweep.size() * plan.norm_sweep.size());
  errors.pesa_db.reserve(plan.bits_sweep.size());
  for (int bits : plan.bits_sweep) {
    const PhaseGrid phases(bits);
    const BeampatternTrace pesa =
        serial_trace(base.config, quantize_pesa(steer, phases), grid, base.floor_db);
    errors.pesa_db.push_back(rms_diff_db(reference, pesa, at));
    for (double norm : plan.norm_sweep) {
      const DpsBeamformer dps = serial::approximate(mvdr, phases, base.candidates, norm);
      const BeampatternTrace trace = serial_trace(base.config, dps.realized, grid, base.floor_db);
      errors.dps_db.push_back(rms_diff_db(reference, trace, at));
    }
  }
  return errors;
}

SweepResult aggregate(const MonteCarloPlan& plan, std::span<const TrialErrors> per_trial) {
  const std::size_t norms = plan.norm_sweep.size();
  const auto trials = static_cast<double>(per_trial.size());
  SweepResult result;
  for (std::size_t b = 0; b < plan.bits_sweep.size(); ++b) {
    double pesa_sum = 0.0;
    for (const TrialErrors& e : per_trial) pesa_sum += e.pesa_db[b];
    for (std::size_t n = 0; n < norms; ++n) {
      double dps_sum = 0.0;
      for (const TrialErrors& e : per_trial) dps_sum += e.dps_db[b * norms + n];
      result.rows.push_back({plan.bits_sweep[b], plan.norm_sweep[n], dps_sum / trials,
                             pesa_sum / trials, per_trial.size()});
    }
  }
  return result;
}

}  // namespace detail

}  // namespace dps
