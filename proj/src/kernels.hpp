#pragma once

// Per-point, per-element and per-trial work shared by dps::serial and the
// OpenMP kernels. Both paths run exactly this arithmetic, so their results
// are bit-identical.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include <omp.h>

#include "dps/array_model.hpp"
#include "dps/execution.hpp"
#include "dps/experiments.hpp"

namespace dps::detail {

inline int resolve_workers(Execution exec) {
  return exec.workers > 0 ? exec.workers : omp_get_max_threads();
}

// |sum_n w_n z^n|^2 with z = exp(-j 2 pi (d/lambda) sin theta), by Horner.
inline double array_power(std::span<const cplx> w, double spacing, double theta) {
  const double psi = 2.0 * std::numbers::pi * spacing * std::sin(theta);
  const cplx z(std::cos(psi), -std::sin(psi));
  cplx acc(0.0, 0.0);
  for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc * z + *it;
  return std::norm(acc);
}

// Per-(bits, norm) RMS errors of one Monte-Carlo trial, bits-major.
struct TrialErrors {
  std::vector<double> dps_db;
  std::vector<double> pesa_db;
};

TrialErrors evaluate_trial(const ScenarioSpec& base, const MonteCarloPlan& plan,
                           std::uint64_t trial);

SweepResult aggregate(const MonteCarloPlan& plan, std::span<const TrialErrors> per_trial);

void validate_plan(const MonteCarloPlan& plan);

}  // namespace dps::detail
