#include <doctest.h>

#include <cmath>

#include "rieszlab/measure.hpp"

using namespace rieszlab;

namespace {

VectorMeasure delta(int N, double mass = 1.0) {
  VectorMeasure::Atom a;
  a.point = RVec::Zero(N);
  a.weight = CVec::Constant(1, Complex(mass, 0));
  return VectorMeasure::atomic(N, 1, {a});
}

}  // namespace

TEST_CASE("total variation of complex weights") {
  VectorMeasure::Atom a;
  a.point = RVec::Zero(2);
  a.weight = CVec(2);
  a.weight << Complex(1, 1), Complex(0, 0);
  auto mu = VectorMeasure::atomic(2, 2, {a});
  CHECK(mu.total_variation().total_mass() == doctest::Approx(2.0));

  CHECK(VectorMeasure::zero(2, 1).total_mass() == doctest::Approx(0.0));

  VectorMeasure::Atom b1, b2;
  b1.point = RVec::Zero(2);
  b1.weight = CVec(2);
  b1.weight << Complex(1, 0), Complex(0, 0);
  b2.point = RVec::Ones(2);
  b2.weight = CVec(2);
  b2.weight << Complex(0, 0), Complex(3, 0);
  auto two = VectorMeasure::atomic(2, 2, {b1, b2});
  CHECK(two.total_mass() == doctest::Approx(4.0));
}

TEST_CASE("positivity convention enforced") {
  VectorMeasure::Atom a;
  a.point = RVec::Zero(2);
  a.weight = CVec::Constant(1, Complex(-1, 0));
  CHECK_THROWS_AS(VectorMeasure::atomic(2, 1, {a}), std::invalid_argument);
}

TEST_CASE("ball mass for atoms") {
  auto mu = delta(2);
  CHECK(mu.ball_mass(RVec::Zero(2), 1.0)[0].real() == doctest::Approx(1.0));
  RVec far(2);
  far << 5.0, 0.0;
  CHECK(mu.ball_mass(far, 1.0)[0].real() == doctest::Approx(0.0));
}

TEST_CASE("ball mass of Lebesgue density matches area") {
  auto leb = lebesgue_measure(Box::centered_cube(2, 1.0), {64, 64});
  double got = leb.ball_mass(RVec::Zero(2), 0.5)[0].real();
  CHECK(got == doctest::Approx(M_PI * 0.25).epsilon(0.01));
}

TEST_CASE("ball mass scaling and monotonicity") {
  auto leb = lebesgue_measure(Box::centered_cube(2, 1.0), {32, 32});
  auto scaled = leb.scaled(2.5);
  RVec x(2);
  x << 0.1, -0.2;
  CHECK(scaled.ball_mass(x, 0.4)[0].real() ==
        doctest::Approx(2.5 * leb.ball_mass(x, 0.4)[0].real()));
  double prev = 0;
  for (double r : {0.1, 0.2, 0.4, 0.8}) {
    double v = leb.ball_mass(x, r)[0].real();
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("radial mass profile agrees with direct ball mass") {
  auto leb = lebesgue_measure(Box::centered_cube(2, 1.0), {32, 32});
  RVec c(2);
  c << 0.3, 0.0;
  RadialMassProfile prof(leb, c);
  for (double r : {0.2, 0.5, 1.0}) {
    double direct = leb.ball_mass(c, r)[0].real();
    CHECK(prof.mass(r) == doctest::Approx(direct).epsilon(0.05));
  }
  CHECK(prof.total() == doctest::Approx(leb.total_mass()));
}

TEST_CASE("total variation additivity for positive parts") {
  auto leb = lebesgue_measure(Box::centered_cube(2, 1.0), {16, 16});
  auto s = leb.scaled(2.0);
  CHECK(leb.total_mass() + s.total_mass() == doctest::Approx(3.0 * leb.total_mass()));
}

TEST_CASE("power law measure mass") {
  // density |x|^{-1} on a box: mass of B(0,R) = 2 pi R
  auto nu = power_law_measure(2, -1.0, Box::centered_cube(2, 1.0), {128, 128});
  double got = nu.ball_mass(RVec::Zero(2), 0.5)[0].real();
  CHECK(got == doctest::Approx(2 * M_PI * 0.5).epsilon(0.03));
}

TEST_CASE("line measure approximates H^1 on the axis") {
  auto h1 = line_measure(2, 4.0, 0.01);
  CHECK(h1.total_mass() == doctest::Approx(8.0).epsilon(0.01));
  CHECK(h1.ball_mass(RVec::Zero(2), 1.0)[0].real() == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("support radius and resolution scale") {
  auto mu = delta(3);
  CHECK(mu.support_radius() == doctest::Approx(0.0));
  CHECK(mu.resolution_scale() == doctest::Approx(0.0));
  auto leb = lebesgue_measure(Box::centered_cube(2, 1.0), {32, 32});
  CHECK(leb.support_radius() == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
  CHECK(leb.resolution_scale() == doctest::Approx(0.5 * std::sqrt(2.0) / 16).epsilon(1e-9));
}

TEST_CASE("gridded validation") {
  Box b = Box::centered_cube(2, 1.0);
  std::vector<CVec> bad{CVec::Constant(4, Complex(-0.1, 0))};
  CHECK_THROWS_AS(VectorMeasure::gridded(b, {2, 2}, bad), std::invalid_argument);
  std::vector<CVec> wrong{CVec::Ones(5)};
  CHECK_THROWS_AS(VectorMeasure::gridded(b, {2, 2}, wrong), std::invalid_argument);
}
