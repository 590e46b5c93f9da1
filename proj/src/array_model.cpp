#include "dps/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dps/errors.hpp"
#include "kernels.hpp"

namespace dps {

void validate(const ArrayConfig& config) {
  if (config.n_antennas < 1) throw ContractError("array needs at least one antenna");
  if (!(config.spacing_wavelengths > 0.0) || !std::isfinite(config.spacing_wavelengths))
    throw ContractError("element spacing must be positive and finite");
}

bool Angle::is_look_direction() const {
  // Degree inputs of exactly +-90 can land one ulp past pi/2.
  return std::isfinite(rad_) && std::abs(rad_) <= std::numbers::pi / 2.0 * (1.0 + 1e-15);
}

std::vector<Angle> uniform_grid_deg(double lo_deg, double hi_deg, double step_deg) {
  if (!(step_deg > 0.0) || !(hi_deg >= lo_deg))
    throw ContractError("grid needs step > 0 and hi >= lo");
  const auto count = static_cast<std::size_t>(std::floor((hi_deg - lo_deg) / step_deg + 1e-9)) + 1;
  // Steps like 0.1 deg are generated as integer units / 10 so points such
  // as 0 and -47 come out exact instead of accumulating 0.1 roundoff.
  const double per_degree = std::round(1.0 / step_deg);
  const double lo_units = lo_deg * per_degree;
  const bool decimal = per_degree >= 1.0 &&
                       std::abs(1.0 / step_deg - per_degree) < 1e-9 * per_degree &&
                       std::abs(lo_units - std::round(lo_units)) < 1e-9;

  std::vector<Angle> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double deg = decimal ? (std::round(lo_units) + static_cast<double>(i)) / per_degree
                               : lo_deg + static_cast<double>(i) * step_deg;
    grid.push_back(Angle::degrees(deg));
  }
  return grid;
}

std::vector<Angle> default_grid(double step_deg) { return uniform_grid_deg(-90.0, 90.0, step_deg); }

std::size_t nearest_index(std::span<const Angle> grid, Angle theta) {
  if (grid.empty()) throw ContractError("empty angle grid");
  auto it = std::lower_bound(grid.begin(), grid.end(), theta);
  if (it == grid.end()) return grid.size() - 1;
  if (it == grid.begin()) return 0;
  auto prev = std::prev(it);
  const bool take_prev = theta.rad() - prev->rad() <= it->rad() - theta.rad();
  return static_cast<std::size_t>((take_prev ? prev : it) - grid.begin());
}

ComplexWeights steering_vector(const ArrayConfig& config, Angle theta) {
  validate(config);
  if (!theta.is_look_direction())
    throw DomainError("look direction outside [-90, 90] deg: " + std::to_string(theta.deg()));
  const double step = 2.0 * std::numbers::pi * config.spacing_wavelengths * std::sin(theta.rad());
  ComplexWeights a(config.n_antennas);
  for (std::size_t n = 0; n < a.size(); ++n) a[n] = std::polar(1.0, static_cast<double>(n) * step);
  return a;
}

double beampattern_power(const ArrayConfig& config, std::span<const cplx> w, Angle theta) {
  if (w.size() != config.n_antennas) throw ContractError("weight count does not match array");
  const ComplexWeights a = steering_vector(config, theta);
  cplx inner(0.0, 0.0);
  for (std::size_t n = 0; n < a.size(); ++n) inner += std::conj(a[n]) * w[n];
  return std::norm(inner);
}

std::vector<double> beampattern_powers(const ArrayConfig& config, std::span<const cplx> w,
                                       std::span<const Angle> grid, Execution exec) {
  validate(config);
  if (w.size() != config.n_antennas) throw ContractError("weight count does not match array");
  std::vector<double> power(grid.size());
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
  const int workers = detail::resolve_workers(exec);
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    power[i] = detail::array_power(w, config.spacing_wavelengths, grid[i].rad());
  return power;
}

std::vector<double> normalize_db(std::span<const double> power_linear, double floor_db) {
  std::vector<double> db(power_linear.size(), floor_db);
  if (power_linear.empty()) return db;
  const double peak = *std::max_element(power_linear.begin(), power_linear.end());
  if (!(peak > 0.0)) return db;
  for (std::size_t i = 0; i < db.size(); ++i) {
    const double ratio = power_linear[i] / peak;
    if (ratio > 0.0) db[i] = std::max(10.0 * std::log10(ratio), floor_db);
  }
  return db;
}

BeampatternTrace beampattern_trace(const ArrayConfig& config, std::span<const cplx> w,
                                   std::span<const Angle> grid, double floor_db, Execution exec) {
  if (grid.empty()) throw ContractError("empty angle grid");
  if (!(floor_db < 0.0)) throw ContractError("dB floor must be negative");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i - 1] < grid[i])) throw ContractError("angle grid must be strictly increasing");
  for (const Angle& theta : grid)
    if (!theta.is_look_direction()) throw DomainError("grid angle outside [-90, 90] deg");

  BeampatternTrace trace;
  trace.angles.assign(grid.begin(), grid.end());
  trace.power_linear = beampattern_powers(config, w, grid, exec);
  trace.power_db = normalize_db(trace.power_linear, floor_db);
  trace.floor_db = floor_db;
  return trace;
}

double rms_diff_db(const BeampatternTrace& a, const BeampatternTrace& b,
                   std::span<const std::size_t> at_indices) {
  if (a.angles != b.angles) throw ContractError("traces are sampled on different grids");
  if (a.power_db.size() != a.angles.size() || b.power_db.size() != b.angles.size())
    throw ContractError("trace dB data does not match its grid");
  double sum = 0.0;
  std::size_t count = 0;
  auto add = [&](std::size_t i) {
    if (i >= a.power_db.size()) throw ContractError("trace index out of range");
    const double d = a.power_db[i] - b.power_db[i];
    sum += d * d;
    ++count;
  };
  if (at_indices.empty()) {
    for (std::size_t i = 0; i < a.power_db.size(); ++i) add(i);
  } else {
    for (std::size_t i : at_indices) add(i);
  }
  return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
}

double level_db_at(const BeampatternTrace& trace, Angle theta) {
  return trace.power_db.at(nearest_index(trace.angles, theta));
}

}  // namespace dps
