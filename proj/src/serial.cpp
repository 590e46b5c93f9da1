#include "dps/serial.hpp"

#include "dps/errors.hpp"
#include "kernels.hpp"

namespace dps::serial {

std::vector<double> beampattern_powers(const ArrayConfig& config, std::span<const cplx> w,
                                       std::span<const Angle> grid) {
  validate(config);
  if (w.size() != config.n_antennas) throw ContractError("weight count does not match array");
  std::vector<double> power(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    power[i] = detail::array_power(w, config.spacing_wavelengths, grid[i].rad());
  return power;
}

DpsBeamformer approximate(std::span<const cplx> w, const PhaseGrid& grid, std::size_t L,
                          double norm_target) {
  if (L == 0) throw ContractError("candidate count L must be positive");
  const ComplexWeights target = normalize_to_max(w, norm_target);
  DpsBeamformer out{grid, {}, {}};
  out.pairs.reserve(target.size());
  out.realized.reserve(target.size());
  for (const cplx& v : target) {
    out.pairs.push_back(approximate_element(v, grid, L));
    out.realized.push_back(realize(grid, out.pairs.back()));
  }
  return out;
}

SweepResult run_monte_carlo(const ScenarioSpec& base, const MonteCarloPlan& plan) {
  detail::validate_plan(plan);
  validate(base.config);
  std::vector<detail::TrialErrors> per_trial;
  per_trial.reserve(plan.trials);
  for (std::size_t t = 0; t < plan.trials; ++t)
    per_trial.push_back(detail::evaluate_trial(base, plan, t));
  return detail::aggregate(plan, per_trial);
}

}  // namespace dps::serial
