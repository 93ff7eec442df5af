#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qparl/qstate.hpp"
#include "qparl/rng.hpp"

using namespace qparl;

namespace {

PureState random_state(RandomStream& rng) {
  return PureState(rng.uniform(0.0, kPi), rng.uniform() * kTwoPi);
}

}  // namespace

TEST_CASE("pure state validates its angles") {
  CHECK_NOTHROW(PureState(0.0, 0.0));
  CHECK_NOTHROW(PureState(kPi, 0.0));
  CHECK_THROWS_AS(PureState(-0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PureState(kPi + 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PureState(0.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(PureState(0.5, kTwoPi), std::invalid_argument);
  CHECK_THROWS_AS(PureState(std::nan(""), 0.0), std::invalid_argument);
}

TEST_CASE("pure state amplitudes are normalized") {
  RandomStream rng(11);
  for (int i = 0; i < 200; ++i) {
    const PureState s = random_state(rng);
    const double a = s.amplitude_yes();
    const double n = a * a + std::norm(s.amplitude_no());
    CHECK(std::abs(n - 1.0) < 1e-12);
  }
}

TEST_CASE("density_of reproduces the basis projectors") {
  const DensityMatrix rho0 = density_of(PureState(0.0, 0.0));
  CHECK(std::abs(rho0.at(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(rho0.at(0, 1)) < 1e-12);
  CHECK(std::abs(rho0.at(1, 0)) < 1e-12);
  CHECK(std::abs(rho0.at(1, 1)) < 1e-12);

  const DensityMatrix rho1 = density_of(PureState(kPi, 0.0));
  CHECK(std::abs(rho1.at(0, 0)) < 1e-12);
  CHECK(std::abs(rho1.at(1, 1) - 1.0) < 1e-12);

  const DensityMatrix equator = density_of(PureState(kPi / 2.0, 0.0));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      CHECK(std::abs(equator.at(r, c) - 0.5) < 1e-12);
}

TEST_CASE("density_of output is a rank-1 projector") {
  RandomStream rng(12);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = density_of(random_state(rng));
    // rho^2 == rho entrywise
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        const complexd sq = rho.at(r, 0) * rho.at(0, c) + rho.at(r, 1) * rho.at(1, c);
        CHECK(std::abs(sq - rho.at(r, c)) < 1e-10);
      }
  }
}

TEST_CASE("density matrix construction rejects invalid input") {
  CHECK_THROWS_AS(DensityMatrix(0.5, {0.1, 0.2}, {0.1, 0.2}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(0.7, 0.0, 0.0, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(1.3, 0.0, 0.0, -0.3), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(complexd{0.5, 0.1}, 0.0, 0.0, complexd{0.5, -0.1}),
                  std::invalid_argument);
  CHECK_NOTHROW(DensityMatrix(0.5, {0.1, 0.2}, {0.1, -0.2}, 0.5));
}

TEST_CASE("trace distance on reference pairs") {
  const DensityMatrix rho0 = density_of(PureState(0.0, 0.0));
  const DensityMatrix rho1 = density_of(PureState(kPi, 0.0));
  const DensityMatrix plus = density_of(PureState(kPi / 2.0, 0.0));

  CHECK(trace_distance(rho0, rho1) == Catch::Approx(1.0).margin(1e-12));
  CHECK(trace_distance(rho0, rho0) == Catch::Approx(0.0).margin(1e-12));
  CHECK(trace_distance(rho0, plus) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-10));
}

TEST_CASE("trace distance is symmetric and satisfies the triangle inequality") {
  RandomStream rng(13);
  for (int i = 0; i < 300; ++i) {
    const DensityMatrix a = density_of(random_state(rng));
    const DensityMatrix b = density_of(random_state(rng));
    const DensityMatrix c = density_of(random_state(rng));
    const double ab = trace_distance(a, b);
    const double ba = trace_distance(b, a);
    const double ac = trace_distance(a, c);
    const double cb = trace_distance(c, b);
    CHECK(std::abs(ab - ba) < 1e-12);
    CHECK(ab <= ac + cb + 1e-10);
    CHECK(ab >= -1e-15);
    CHECK(ab <= 1.0 + 1e-12);
  }
}

TEST_CASE("distances to the basis states") {
  CHECK(distance_to_yes(PureState(0.0, 0.0)) == 0.0);
  CHECK(distance_to_no(PureState(0.0, 0.0)) == 1.0);
  CHECK(distance_to_yes(PureState(kPi, 0.0)) == 1.0);
  CHECK(distance_to_no(PureState(kPi, 0.0)) == 0.0);

  // theta = pi/3: independently evaluated sin(pi/6), cos(pi/6)
  const PureState s(kPi / 3.0, 0.0);
  CHECK(distance_to_yes(s) == Catch::Approx(0.5).margin(1e-12));
  CHECK(distance_to_no(s) == Catch::Approx(0.8660254037844386).margin(1e-12));
}

TEST_CASE("closed-form distances agree with the trace-distance route") {
  RandomStream rng(14);
  const DensityMatrix rho0 = density_of(PureState(0.0, 0.0));
  const DensityMatrix rho1 = density_of(PureState(kPi, 0.0));
  for (int i = 0; i < 200; ++i) {
    const PureState s = random_state(rng);
    const DensityMatrix rho = density_of(s);
    CHECK(std::abs(distance_to_yes(s) - trace_distance(rho0, rho)) < 1e-10);
    CHECK(std::abs(distance_to_no(s) - trace_distance(rho1, rho)) < 1e-10);
    const double dy = distance_to_yes(s);
    const double dn = distance_to_no(s);
    CHECK(std::abs(dy * dy + dn * dn - 1.0) < 1e-10);
  }
}

TEST_CASE("distance from |yes> ignores the azimuth") {
  RandomStream rng(15);
  const DensityMatrix rho0 = density_of(PureState(0.0, 0.0));
  for (int i = 0; i < 50; ++i) {
    const double theta = rng.uniform(0.0, kPi);
    const double ref = trace_distance(rho0, density_of(PureState(theta, 0.0)));
    for (double phi : {0.5, 1.7, 3.1, 4.9, 6.2}) {
      CHECK(std::abs(trace_distance(rho0, density_of(PureState(theta, phi))) - ref) < 1e-12);
    }
  }
}
