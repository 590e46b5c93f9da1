#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "dps/array_model.hpp"

namespace dps {

/// K known targets; the one at desired_index is illuminated, the rest are
/// clutter.
struct TargetScenario {
  std::vector<Angle> targets;
  std::size_t desired_index = 0;

  Angle desired() const { return targets.at(desired_index); }
};

void validate(const TargetScenario& scenario);

struct MvdrParams {
  double gamma = 0.1;  // null-depth regularizer, > 0
};

/// w = a(theta0): the phase-only beam toward a single target.
ComplexWeights steering_beamformer(const ArrayConfig& config, Angle theta0);

/// gamma I + A A^H, with A the N x K matrix of target steering vectors.
Eigen::MatrixXcd mvdr_system_matrix(const ArrayConfig& config, const TargetScenario& scenario,
                                    double gamma);

/// Solves (gamma I + A A^H) w = a(theta_k) through a Cholesky factorization.
/// Throws ParameterError for gamma <= 0.
ComplexWeights mvdr_beamformer(const ArrayConfig& config, const TargetScenario& scenario,
                               const MvdrParams& params);

/// More targets than antennas: the system stays solvable but cannot null
/// every clutter direction.
bool exceeds_degrees_of_freedom(const ArrayConfig& config, const TargetScenario& scenario);

}  // namespace dps
