#pragma once

// Single-threaded reference versions of the parallel kernels. They share
// the per-point/per-element/per-trial arithmetic with the OpenMP versions
// and exist so tests and benchmarks can compare the two.

#include <span>
#include <vector>

#include "dps/array_model.hpp"
#include "dps/dps_quantize.hpp"
#include "dps/experiments.hpp"

namespace dps::serial {

std::vector<double> beampattern_powers(const ArrayConfig& config, std::span<const cplx> w,
                                       std::span<const Angle> grid);

DpsBeamformer approximate(std::span<const cplx> w, const PhaseGrid& grid, std::size_t L,
                          double norm_target = 2.0);

SweepResult run_monte_carlo(const ScenarioSpec& base, const MonteCarloPlan& plan);

}  // namespace dps::serial
