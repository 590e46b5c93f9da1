#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dps/array_model.hpp"
#include "dps/errors.hpp"
#include "test_support.hpp"

using namespace dps;

namespace {

const ArrayConfig kHalfWave16{16, 0.5};

BeampatternTrace trace_from_db(std::vector<double> db) {
  BeampatternTrace t;
  for (std::size_t i = 0; i < db.size(); ++i) t.angles.push_back(Angle::degrees(static_cast<double>(i)));
  t.power_linear.assign(db.size(), 1.0);
  t.power_db = std::move(db);
  return t;
}

}  // namespace

TEST_CASE("steering vector at broadside is all ones") {
  const auto a = steering_vector({4, 0.5}, Angle::degrees(0.0));
  REQUIRE(a.size() == 4);
  for (const auto& v : a) CHECK(v == cplx(1.0, 0.0));
}

TEST_CASE("steering vector for two elements at 30 deg is [1, j]") {
  const auto a = steering_vector({2, 0.5}, Angle::degrees(30.0));
  CHECK(a[0] == cplx(1.0, 0.0));
  CHECK(std::abs(a[1] - cplx(0.0, 1.0)) < 1e-15);
}

TEST_CASE("steering vector phases at 49 deg match an independent evaluation") {
  // n * pi * sin(49 deg) mod 2pi, evaluated outside this code base.
  const double expected[16] = {0.0,
                               2.3709900728217,
                               4.74198014564339,
                               0.829784911285505,
                               3.2007749841072,
                               5.5717650569289,
                               1.65956982257101,
                               4.03055989539271,
                               0.118364661034818,
                               2.48935473385652,
                               4.86034480667821,
                               0.948149572320322,
                               3.31913964514202,
                               5.69012971796372,
                               1.77793448360583,
                               4.14892455642752};
  const auto a = steering_vector(kHalfWave16, Angle::degrees(49.0));
  for (std::size_t n = 0; n < 16; ++n) {
    double arg = std::arg(a[n]);
    if (arg < 0.0) arg += 2.0 * std::numbers::pi;
    CHECK(arg == doctest::Approx(expected[n]).epsilon(1e-12));
  }
}

TEST_CASE("steering vector rejects directions beyond endfire") {
  CHECK_THROWS_AS(steering_vector(kHalfWave16, Angle::degrees(90.5)), DomainError);
  CHECK_THROWS_AS(steering_vector(kHalfWave16, Angle::degrees(-91.0)), DomainError);
  CHECK_NOTHROW(steering_vector(kHalfWave16, Angle::degrees(90.0)));
  CHECK_THROWS_AS(steering_vector({0, 0.5}, Angle::degrees(0.0)), ContractError);
  CHECK_THROWS_AS(steering_vector({4, 0.0}, Angle::degrees(0.0)), ContractError);
}

TEST_CASE("beampattern power hand-computed values") {
  const auto theta0 = Angle::degrees(12.0);
  const auto w = steering_vector(kHalfWave16, theta0);
  CHECK(beampattern_power(kHalfWave16, w, theta0) == doctest::Approx(256.0).epsilon(1e-12));

  const ArrayConfig two{2, 0.5};
  const ComplexWeights ones{1.0, 1.0};
  CHECK(beampattern_power(two, ones, Angle::degrees(90.0)) < 1e-20);
  CHECK(beampattern_power(two, ones, Angle::degrees(30.0)) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(beampattern_power(two, ComplexWeights{1.0}, Angle::degrees(0.0)), ContractError);
}

TEST_CASE("dB normalization and clamping") {
  const std::vector<double> lin{256.0, 2.56};
  const auto db = normalize_db(lin, -80.0);
  CHECK(db[0] == 0.0);
  CHECK(db[1] == doctest::Approx(-20.0).epsilon(1e-12));

  for (double v : normalize_db(std::vector<double>{3.0, 3.0, 3.0}, -80.0)) CHECK(v == 0.0);

  const auto zero = normalize_db(std::vector<double>{1.0, 0.0}, -80.0);
  CHECK(zero[1] == -80.0);

  for (double v : normalize_db(std::vector<double>{0.0, 0.0}, -60.0)) CHECK(v == -60.0);
}

TEST_CASE("trace contract checks") {
  const ComplexWeights w(16, cplx(1.0, 0.0));
  CHECK_THROWS_AS(beampattern_trace(kHalfWave16, w, std::vector<Angle>{}), ContractError);
  const std::vector<Angle> descending{Angle::degrees(1.0), Angle::degrees(0.0)};
  CHECK_THROWS_AS(beampattern_trace(kHalfWave16, w, descending), ContractError);
  const std::vector<Angle> one{Angle::degrees(0.0)};
  CHECK_THROWS_AS(beampattern_trace(kHalfWave16, w, one, 0.0), ContractError);
}

TEST_CASE("default grid") {
  const auto grid = default_grid();
  REQUIRE(grid.size() == 1801);
  CHECK(grid.front().deg() == doctest::Approx(-90.0));
  CHECK(grid.back().deg() == doctest::Approx(90.0));
  CHECK(grid[900].rad() == 0.0);
  CHECK(grid[nearest_index(grid, Angle::degrees(-47.0))] == Angle::degrees(-47.0));
  CHECK(grid[nearest_index(grid, Angle::degrees(49.0))] == Angle::degrees(49.0));
  CHECK(uniform_grid_deg(-90.0, 90.0, 1.0).size() == 181);
}

TEST_CASE("rms difference in dB") {
  const auto a = trace_from_db({0.0, -10.0, -40.0});
  const auto b = trace_from_db({0.0, -13.0, -46.0});
  CHECK(rms_diff_db(a, a) == 0.0);
  CHECK(rms_diff_db(a, b) == doctest::Approx(3.872983346207417).epsilon(1e-12));

  const auto shifted = trace_from_db({-2.5, -12.5, -42.5});
  CHECK(rms_diff_db(a, shifted) == doctest::Approx(2.5));

  const std::vector<std::size_t> last_two{1, 2};
  CHECK(rms_diff_db(a, b, last_two) == doctest::Approx(std::sqrt(45.0 / 2.0)));

  auto other_grid = b;
  other_grid.angles[0] = Angle::degrees(-5.0);
  CHECK_THROWS_AS(rms_diff_db(a, other_grid), ContractError);
}

TEST_CASE("property: steering entries have unit modulus") {
  auto gen = test::rng(11);
  std::uniform_int_distribution<std::size_t> n(1, 64);
  std::uniform_real_distribution<double> d(0.05, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const ArrayConfig config{n(gen), d(gen)};
    const auto a = steering_vector(config, test::random_look(gen));
    CHECK(a[0] == cplx(1.0, 0.0));
    for (const auto& v : a) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
  }
}

TEST_CASE("property: steering beam peaks at its own direction with N^2") {
  const auto grid = default_grid();
  auto gen = test::rng(12);
  std::uniform_int_distribution<int> idx(0, static_cast<int>(grid.size()) - 1);
  for (int trial = 0; trial < 50; ++trial) {
    const Angle theta0 = grid[idx(gen)];
    const auto trace = beampattern_trace(kHalfWave16, steering_vector(kHalfWave16, theta0), grid);
    const auto peak = std::max_element(trace.power_linear.begin(), trace.power_linear.end());
    CHECK(std::abs(*peak - 256.0) <= 1e-9 * 256.0);
    // At +-90 deg, half-wave spacing aliases the beam onto the other endfire.
    if (std::abs(theta0.deg()) < 90.0 - 1e-9)
      CHECK(trace.angles[static_cast<std::size_t>(peak - trace.power_linear.begin())] == theta0);
  }
}

TEST_CASE("property: peak normalization removes any complex scale") {
  const auto grid = default_grid(0.5);
  auto gen = test::rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexWeights w(16);
    for (auto& v : w) v = test::random_complex(gen);
    const cplx c = test::random_complex(gen) * 10.0;
    ComplexWeights scaled = w;
    for (auto& v : scaled) v *= c;
    const auto base = beampattern_trace(kHalfWave16, w, grid);
    const auto other = beampattern_trace(kHalfWave16, scaled, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      CHECK(std::abs(base.power_db[i] - other.power_db[i]) < 1e-9);
  }
}

TEST_CASE("property: conjugate weights mirror the pattern") {
  auto gen = test::rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    ComplexWeights w(16);
    for (auto& v : w) v = test::random_complex(gen);
    ComplexWeights conj_w = w;
    for (auto& v : conj_w) v = std::conj(v);
    const Angle theta = test::random_look(gen);
    const double p = beampattern_power(kHalfWave16, w, theta);
    const double q = beampattern_power(kHalfWave16, conj_w, Angle::radians(-theta.rad()));
    CHECK(std::abs(p - q) <= 1e-9 * std::max(1.0, p));
  }
}

TEST_CASE("property: grid kernel agrees with the explicit inner product") {
  auto gen = test::rng(15);
  const auto grid = default_grid(1.0);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexWeights w(16);
    for (auto& v : w) v = test::random_complex(gen);
    const auto powers = beampattern_powers(kHalfWave16, w, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double direct = beampattern_power(kHalfWave16, w, grid[i]);
      CHECK(std::abs(powers[i] - direct) <= 1e-9 * std::max(1.0, direct));
    }
  }
}
