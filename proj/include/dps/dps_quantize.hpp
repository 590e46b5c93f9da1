#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "dps/array_model.hpp"

namespace dps {

/// The 2^B phases {0, 2pi/2^B, ..., 2pi(1 - 2^-B)} a B-bit phase shifter
/// can realize, with their unit phasors tabulated once.
class PhaseGrid {
 public:
  static constexpr int kMaxBits = 24;

  explicit PhaseGrid(int bits);

  int bits() const { return bits_; }
  std::size_t size() const { return phases_.size(); }
  double step() const { return step_; }
  double phase(std::size_t i) const { return phases_[i]; }
  cplx phasor(std::size_t i) const { return phasors_[i]; }
  std::span<const double> phases() const { return phases_; }

 private:
  int bits_;
  double step_;
  std::vector<double> phases_;
  std::vector<cplx> phasors_;
};

/// Unordered pair of grid indices, stored with index_a <= index_b.
struct PhasePair {
  std::size_t index_a = 0;
  std::size_t index_b = 0;

  static PhasePair canonical(std::size_t i, std::size_t j) {
    return i <= j ? PhasePair{i, j} : PhasePair{j, i};
  }

  friend auto operator<=>(const PhasePair&, const PhasePair&) = default;
};

/// c = exp(j phi1) + exp(j phi2) with phi1 = omega + acos(|c|/2) and
/// phi2 = omega - acos(|c|/2), both wrapped to [0, 2pi).
struct Decomposition {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

struct DpsBeamformer {
  PhaseGrid grid;
  std::vector<PhasePair> pairs;
  ComplexWeights realized;
};

/// Wraps to [0, 2pi).
double wrap_phase(double phi);

/// min(|d|, 2pi - |d|) for d = a - b reduced mod 2pi.
double circular_distance(double a, double b);

/// Throws DomainError when |c| > 2. decompose(0) = (pi/2, 3pi/2).
Decomposition decompose(cplx c);
cplx recompose(const Decomposition& d);

/// Scales w so its largest modulus equals target, target in (0, 2].
ComplexWeights normalize_to_max(std::span<const cplx> w, double target);

/// Indices of the min(L, 2^B) grid phases closest to phi on the circle,
/// nearest first, ties to the smaller index.
std::vector<std::size_t> nearest_phases(double phi, const PhaseGrid& grid, std::size_t L);

/// exp(j phase[a]) + exp(j phase[b]) from the grid's phasor table.
cplx realize(const PhaseGrid& grid, PhasePair pair);

/// Best pair for one already-normalized weight: decompose, take the L
/// nearest grid phases of each half, and keep the combination closest to
/// w_n (ties to the lexicographically smallest canonical pair).
PhasePair approximate_element(cplx w_n, const PhaseGrid& grid, std::size_t L);

/// Normalizes w to max modulus norm_target, then approximates every element
/// with approximate_element. Elements are processed in parallel.
DpsBeamformer approximate(std::span<const cplx> w, const PhaseGrid& grid, std::size_t L,
                          double norm_target = 2.0, Execution exec = {});

/// Brute force over all (2^B + 1) 2^B / 2 canonical pairs. Refuses B > 12.
PhasePair exhaustive_oracle(cplx w_n, const PhaseGrid& grid);
inline constexpr int kOracleMaxBits = 12;

/// Phase-only PESA weights: each entry snapped to the nearest grid phase
/// with unit modulus. Throws DomainError on a zero entry.
ComplexWeights quantize_pesa(std::span<const cplx> w, const PhaseGrid& grid);

}  // namespace dps
