#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dps/array_model.hpp"
#include "dps/beamformers.hpp"
#include "dps/execution.hpp"

namespace dps {

/// Everything one experiment needs. Defaults are the published setup:
/// 16 elements at half-wavelength spacing, 4-bit shifters, L = 3, weights
/// normalized to a maximum magnitude of 2.
struct ScenarioSpec {
  ArrayConfig config;
  TargetScenario scenario;
  std::optional<double> gamma;  // absent: single-target steering beamformer
  int bits = 4;
  std::size_t candidates = 3;
  double norm_target = 2.0;
  double grid_step_deg = kDefaultGridStepDeg;
  double floor_db = kDefaultFloorDb;
  std::uint64_t seed = 0;
};

struct TargetLevels {
  Angle angle;
  double reference_db = 0.0;
  double dps_db = 0.0;
  double pesa_db = 0.0;
};

struct TrialResult {
  BeampatternTrace reference;
  BeampatternTrace dps;
  BeampatternTrace pesa;
  double rms_dps_db = 0.0;
  double rms_pesa_db = 0.0;
  std::vector<TargetLevels> levels;
};

struct SweepRow {
  int bits = 0;
  double norm_target = 0.0;
  double mean_rms_dps_db = 0.0;
  double mean_rms_pesa_db = 0.0;
  std::size_t trials = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // bits-major, norm-minor
};

struct MonteCarloPlan {
  std::vector<int> bits_sweep;
  std::vector<double> norm_sweep;
  std::size_t trials = 200;
  std::size_t targets_per_trial = 3;
};

inline constexpr double kDrawLimitDeg = 85.0;
inline constexpr double kMinSeparationDeg = 2.0;

/// K pairwise-distinct integer-degree angles in [-85, 85], at least 2 deg
/// apart, plus a desired index. Depends only on (seed, trial).
TargetScenario draw_scenario(std::uint64_t seed, std::uint64_t trial, std::size_t k);

/// Reference: unquantized steering beam. RMS over the full grid.
TrialResult run_single_target(const ScenarioSpec& spec);

/// Reference: unquantized MVDR. DPS approximates the MVDR weights, PESA
/// quantizes the steering beam toward the desired target. RMS at the
/// target and clutter angles.
TrialResult run_mvdr_clutter(const ScenarioSpec& spec);

/// Trials run in parallel; rows are bit-identical for any worker count.
SweepResult run_monte_carlo(const ScenarioSpec& base, const MonteCarloPlan& plan,
                            Execution exec = {});

}  // namespace dps
