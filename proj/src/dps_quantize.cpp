#include "dps/dps_quantize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dps/errors.hpp"
#include "kernels.hpp"

namespace dps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Slack for weights that were scaled to exactly 2 and picked up rounding.
constexpr double kModulusSlack = 1e-12;

void check_candidates(std::size_t L) {
  if (L == 0) throw ContractError("candidate count L must be positive");
}

}  // namespace

PhaseGrid::PhaseGrid(int bits) : bits_(bits) {
  if (bits < 1 || bits > kMaxBits)
    throw ContractError("phase shifter bits must be in [1, " + std::to_string(kMaxBits) + "]");
  const std::size_t count = std::size_t{1} << bits;
  step_ = std::ldexp(kTwoPi, -bits);
  phases_.resize(count);
  phasors_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    phases_[i] = static_cast<double>(i) * step_;
    phasors_[i] = std::polar(1.0, phases_[i]);
  }
}

double wrap_phase(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double circular_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

Decomposition decompose(cplx c) {
  const double modulus = std::abs(c);
  if (!std::isfinite(modulus) || modulus > 2.0 + kModulusSlack)
    throw DomainError("only weights with modulus <= 2 split into two unit phasors");
  const double omega = std::arg(c);
  const double half_gap = std::acos(std::min(modulus / 2.0, 1.0));
  return {wrap_phase(omega + half_gap), wrap_phase(omega - half_gap)};
}

cplx recompose(const Decomposition& d) { return std::polar(1.0, d.phi1) + std::polar(1.0, d.phi2); }

ComplexWeights normalize_to_max(std::span<const cplx> w, double target) {
  if (!(target > 0.0 && target <= 2.0)) throw DomainError("normalization target must be in (0, 2]");
  double peak = 0.0;
  for (const cplx& v : w) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0) || !std::isfinite(peak))
    throw DomainError("cannot normalize an all-zero or non-finite weight vector");
  const double scale = target / peak;
  ComplexWeights out(w.begin(), w.end());
  for (cplx& v : out) v *= scale;
  return out;
}

std::vector<std::size_t> nearest_phases(double phi, const PhaseGrid& grid, std::size_t L) {
  check_candidates(L);
  const std::size_t count = grid.size();
  const std::size_t keep = std::min(L, count);
  phi = wrap_phase(phi);

  // The keep nearest phases sit within keep steps of phi on either side;
  // one extra step each way covers rounding in the floor.
  std::vector<std::size_t> window;
  if (2 * keep + 2 >= count) {
    window.resize(count);
    for (std::size_t i = 0; i < count; ++i) window[i] = i;
  } else {
    const auto base = static_cast<long long>(std::floor(phi / grid.step()));
    const auto span = static_cast<long long>(keep);
    const auto m = static_cast<long long>(count);
    for (long long k = base - span; k <= base + span + 1; ++k)
      window.push_back(static_cast<std::size_t>(((k % m) + m) % m));
  }

  auto closer = [&](std::size_t i, std::size_t j) {
    const double di = circular_distance(phi, grid.phase(i));
    const double dj = circular_distance(phi, grid.phase(j));
    return di < dj || (di == dj && i < j);
  };
  std::sort(window.begin(), window.end(), closer);
  window.resize(keep);
  return window;
}

cplx realize(const PhaseGrid& grid, PhasePair pair) {
  return grid.phasor(pair.index_a) + grid.phasor(pair.index_b);
}

PhasePair approximate_element(cplx w_n, const PhaseGrid& grid, std::size_t L) {
  const Decomposition d = decompose(w_n);
  const auto near_a = nearest_phases(d.phi1, grid, L);
  const auto near_b = nearest_phases(d.phi2, grid, L);

  PhasePair best{};
  double best_err = INFINITY;
  for (std::size_t ia : near_a) {
    for (std::size_t ib : near_b) {
      const PhasePair pair = PhasePair::canonical(ia, ib);
      const double err = std::abs(realize(grid, pair) - w_n);
      if (err < best_err || (err == best_err && pair < best)) {
        best = pair;
        best_err = err;
      }
    }
  }
  return best;
}

DpsBeamformer approximate(std::span<const cplx> w, const PhaseGrid& grid, std::size_t L,
                          double norm_target, Execution exec) {
  check_candidates(L);
  const ComplexWeights target = normalize_to_max(w, norm_target);
  DpsBeamformer out{grid, std::vector<PhasePair>(target.size()), ComplexWeights(target.size())};
  const auto count = static_cast<std::ptrdiff_t>(target.size());
#pragma omp parallel for schedule(static) num_threads(detail::resolve_workers(exec))
  for (std::ptrdiff_t n = 0; n < count; ++n) {
    out.pairs[n] = approximate_element(target[n], grid, L);
    out.realized[n] = realize(grid, out.pairs[n]);
  }
  return out;
}

PhasePair exhaustive_oracle(cplx w_n, const PhaseGrid& grid) {
  if (grid.bits() > kOracleMaxBits)
    throw RefusalError("exhaustive search refused above " + std::to_string(kOracleMaxBits) +
                       " bits");
  PhasePair best{};
  double best_err = INFINITY;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = a; b < grid.size(); ++b) {
      const PhasePair pair{a, b};
      const double err = std::abs(realize(grid, pair) - w_n);
      if (err < best_err || (err == best_err && pair < best)) {
        best = pair;
        best_err = err;
      }
    }
  }
  return best;
}

ComplexWeights quantize_pesa(std::span<const cplx> w, const PhaseGrid& grid) {
  ComplexWeights out(w.size());
  for (std::size_t n = 0; n < w.size(); ++n) {
    if (w[n] == cplx(0.0, 0.0)) throw DomainError("phase of a zero weight is undefined");
    out[n] = grid.phasor(nearest_phases(std::arg(w[n]), grid, 1).front());
  }
  return out;
}

}  // namespace dps
