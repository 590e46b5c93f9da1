#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "dps/execution.hpp"

namespace dps {

using cplx = std::complex<double>;

/// One complex weight per antenna.
using ComplexWeights = std::vector<cplx>;

/// Uniform linear array. Spacing is d/lambda, the only form in which
/// element spacing and carrier wavelength enter the steering phase.
struct ArrayConfig {
  std::size_t n_antennas = 16;
  double spacing_wavelengths = 0.5;
};

void validate(const ArrayConfig& config);

/// Direction measured from broadside. Stored in radians; external
/// interfaces speak degrees and convert once through degrees().
class Angle {
 public:
  constexpr Angle() = default;

  static constexpr Angle radians(double rad) { return Angle(rad); }
  static constexpr Angle degrees(double deg) {
    return Angle(deg * (std::numbers::pi / 180.0));
  }

  constexpr double rad() const { return rad_; }
  constexpr double deg() const { return rad_ * (180.0 / std::numbers::pi); }

  /// True for physical look directions, |theta| <= pi/2.
  bool is_look_direction() const;

  friend constexpr bool operator==(Angle, Angle) = default;
  friend constexpr auto operator<=>(Angle, Angle) = default;

 private:
  explicit constexpr Angle(double rad) : rad_(rad) {}
  double rad_ = 0.0;
};

/// Sampled power pattern. power_db is peak-normalized and clamped at
/// floor_db.
struct BeampatternTrace {
  std::vector<Angle> angles;
  std::vector<double> power_linear;
  std::vector<double> power_db;
  double floor_db = -80.0;
};

inline constexpr double kDefaultFloorDb = -80.0;
inline constexpr double kDefaultGridStepDeg = 0.1;

/// lo, lo + step, ..., hi in degrees. The point count is rounded so that
/// hi is included when (hi - lo) is a multiple of step.
std::vector<Angle> uniform_grid_deg(double lo_deg, double hi_deg, double step_deg);

/// -90 deg to +90 deg inclusive at the given step (1801 points at 0.1).
std::vector<Angle> default_grid(double step_deg = kDefaultGridStepDeg);

/// Index of the grid point closest to theta.
std::size_t nearest_index(std::span<const Angle> grid, Angle theta);

/// a(theta)[n] = exp(j 2 pi n (d/lambda) sin theta).
ComplexWeights steering_vector(const ArrayConfig& config, Angle theta);

/// |a^H(theta) w|^2.
double beampattern_power(const ArrayConfig& config, std::span<const cplx> w, Angle theta);

/// Linear power over a grid. This is the OpenMP kernel; serial::beampattern_powers
/// is the reference it is tested against.
std::vector<double> beampattern_powers(const ArrayConfig& config, std::span<const cplx> w,
                                       std::span<const Angle> grid, Execution exec = {});

/// Peak-normalized dB form of linear powers, clamped at floor_db. All-zero
/// input maps to floor_db everywhere.
std::vector<double> normalize_db(std::span<const double> power_linear, double floor_db);

BeampatternTrace beampattern_trace(const ArrayConfig& config, std::span<const cplx> w,
                                   std::span<const Angle> grid,
                                   double floor_db = kDefaultFloorDb, Execution exec = {});

/// Root-mean-square difference of the dB forms over the selected indices
/// (empty selection means the whole grid).
double rms_diff_db(const BeampatternTrace& a, const BeampatternTrace& b,
                   std::span<const std::size_t> at_indices = {});

/// Peak-normalized level at the grid point nearest theta.
double level_db_at(const BeampatternTrace& trace, Angle theta);

}  // namespace dps
