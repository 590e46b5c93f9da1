#include "dps/beamformers.hpp"

#include <cmath>
#include <string>

#include "dps/errors.hpp"

namespace dps {

void validate(const TargetScenario& scenario) {
  if (scenario.targets.empty()) throw ContractError("scenario needs at least one target");
  if (scenario.desired_index >= scenario.targets.size())
    throw ContractError("desired target index out of range");
  for (std::size_t i = 0; i < scenario.targets.size(); ++i) {
    if (!scenario.targets[i].is_look_direction())
      throw DomainError("target outside [-90, 90] deg: " + std::to_string(scenario.targets[i].deg()));
    for (std::size_t j = 0; j < i; ++j)
      if (scenario.targets[i] == scenario.targets[j])
        throw ContractError("target angles must be pairwise distinct");
  }
}

ComplexWeights steering_beamformer(const ArrayConfig& config, Angle theta0) {
  return steering_vector(config, theta0);
}

Eigen::MatrixXcd mvdr_system_matrix(const ArrayConfig& config, const TargetScenario& scenario,
                                    double gamma) {
  validate(config);
  validate(scenario);
  const auto n = static_cast<Eigen::Index>(config.n_antennas);
  const auto k = static_cast<Eigen::Index>(scenario.targets.size());
  Eigen::MatrixXcd steering(n, k);
  for (Eigen::Index col = 0; col < k; ++col) {
    const ComplexWeights a = steering_vector(config, scenario.targets[col]);
    steering.col(col) = Eigen::Map<const Eigen::VectorXcd>(a.data(), n);
  }
  Eigen::MatrixXcd system = steering * steering.adjoint();
  system.diagonal().array() += gamma;
  return system;
}

ComplexWeights mvdr_beamformer(const ArrayConfig& config, const TargetScenario& scenario,
                               const MvdrParams& params) {
  if (!(params.gamma > 0.0) || !std::isfinite(params.gamma))
    throw ParameterError("MVDR gamma must be positive and finite");
  const Eigen::MatrixXcd system = mvdr_system_matrix(config, scenario, params.gamma);

  const Eigen::LLT<Eigen::MatrixXcd> llt(system);
  if (llt.info() != Eigen::Success) throw NumericError("MVDR system is not positive definite");

  const ComplexWeights desired = steering_vector(config, scenario.desired());
  const Eigen::VectorXcd w =
      llt.solve(Eigen::Map<const Eigen::VectorXcd>(desired.data(), system.rows()));
  return ComplexWeights(w.data(), w.data() + w.size());
}

bool exceeds_degrees_of_freedom(const ArrayConfig& config, const TargetScenario& scenario) {
  return scenario.targets.size() > config.n_antennas;
}

}  // namespace dps
