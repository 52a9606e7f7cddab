#include <doctest.h>

#include <cmath>

#include "rieszlab/ensemble.hpp"
#include "rieszlab/potentials.hpp"

using namespace rieszlab;

namespace {

VectorMeasure delta(int N, double mass = 1.0) {
  VectorMeasure::Atom a;
  a.point = RVec::Zero(N);
  a.weight = CVec::Constant(1, Complex(mass, 0));
  return VectorMeasure::atomic(N, 1, {a});
}

}  // namespace

TEST_CASE("riesz normalization constant") {
  // N=2, m=1: pi * 2 * Gamma(1/2)/Gamma(1/2) = 2 pi
  CHECK(riesz_constant(2, 1.0) == doctest::Approx(2 * M_PI));
  // N=3, m=2: the Newtonian kernel 1/(4 pi |x|)
  CHECK(riesz_constant(3, 2.0) == doctest::Approx(4 * M_PI));
  // N=3, m=1: pi^{3/2} * 2 * Gamma(1/2)/Gamma(1) = 2 pi^2
  CHECK(riesz_constant(3, 1.0) == doctest::Approx(2 * std::pow(M_PI, 2)));
  CHECK_THROWS_AS(riesz_constant(2, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(riesz_constant(2, 0.0), std::invalid_argument);
}

TEST_CASE("atomic riesz potential closed form") {
  auto d = delta(2);
  RVec x(2);
  x << 3.0, 4.0;
  auto v = riesz_potential_atomic(d, 1.0, x);
  CHECK_FALSE(v.singular);
  CHECK(v.value[0].real() == doctest::Approx(1.0 / (2 * M_PI * 5.0)));
  auto at_atom = riesz_potential_atomic(d, 1.0, RVec::Zero(2));
  CHECK(at_atom.singular);
}

TEST_CASE("grid potential matches direct summation away from the support") {
  auto nu = power_law_measure(2, -0.5, Box::centered_cube(2, 1.0), {64, 64});
  GridField grid = riesz_potential_grid(nu, 1.0, 4);
  // compare at a few interior points
  for (double t : {0.31, 0.52, 0.75}) {
    RVec x(2);
    x << t, -t / 2;
    CVec direct = riesz_potential_eval(nu, 1.0, x);
    // nearest grid cell
    std::vector<int> j(2);
    for (int a = 0; a < 2; ++a)
      j[a] = static_cast<int>(std::lround((x[a] + 1.0) / grid.spacing(a) - 0.5));
    double got = grid.value(grid.flat(j))[0].real();
    CHECK(got == doctest::Approx(direct[0].real()).epsilon(0.05));
  }
}

TEST_CASE("energy dichotomy for a unit-mass disc") {
  // unit total mass on a small disc: I_1 mu ~ (2 pi |x|)^{-1} far out, so the
  // (1,2)-energy grows like log R / (2 pi) and the (1,3)-energy converges
  Box b = Box::centered_cube(2, 1.0);
  auto disc = power_law_measure(2, 0.0, b, {64, 64});
  double mass = disc.total_mass();
  auto unit = disc.scaled(1.0 / mass);

  auto e2 = energy(unit, 1.0, 2.0, {10, 100, 1000}, 48, 60);
  REQUIRE(e2.truncated.size() == 3);
  double inc1 = e2.truncated[1] - e2.truncated[0];
  double inc2 = e2.truncated[2] - e2.truncated[1];
  double expected = std::log(10.0) / (2 * M_PI);
  CHECK(inc1 >= 0.8 * expected);
  CHECK(inc2 >= 0.8 * expected);
  CHECK(inc1 <= 1.3 * expected);

  auto e3 = energy(unit, 1.0, 3.0, {10, 100, 1000}, 48, 60);
  double total = e3.truncated.back();
  CHECK(e3.truncated[2] - e3.truncated[1] <= 0.05 * total);
  CHECK_FALSE(e3.divergent.divergent);
}

TEST_CASE("weak energy of a delta grows with the domain") {
  auto d = delta(2);
  auto rep = weak_energy(d, 1.0, 100.0, 80, 48, 40);
  CHECK(rep.quasinorm > 0);
  CHECK(rep.domain_trend.divergent);  // sup lambda |{...}| scales like r_max
}

TEST_CASE("weak energy of the zero measure is zero") {
  auto rep = weak_energy(VectorMeasure::zero(2, 1), 1.0, 10.0, 20, 16, 20);
  CHECK(rep.quasinorm == doctest::Approx(0.0));
}

TEST_CASE("riesz identity for the gradient") {
  Box b = Box::centered_cube(2, 4.0);
  EnsembleSpec spec;
  spec.seed = 5;
  for (int k = 0; k < 3; ++k) {
    GridField f = ensemble_member(b, {64, 64}, 2, spec, k);
    auto rep = verify_riesz_identity(catalog::gradient(2), f);
    CHECK(rep.relative_residual < 1e-10);
    CHECK(rep.fitted_constant.real() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(rep.fitted_constant.imag()) < 1e-8);
  }
}

TEST_CASE("self-cell regularization reproduces the exact cell average") {
  // mean of |z|^{m-N} over the equal-volume ball: (N/m) rho^{m-N}; probe via
  // riesz_potential_eval at the center of a single-cell measure
  Box b = Box::centered_cube(2, 0.5);
  std::vector<CVec> den{CVec::Constant(1, Complex(1, 0))};
  auto cell = VectorMeasure::gridded(b, {1, 1}, den);
  CVec v = riesz_potential_eval(cell, 1.0, RVec::Zero(2));
  double rho = std::sqrt(1.0 / M_PI);  // equal-volume disc of a unit cell
  double expect = (2.0 / 1.0) * std::pow(rho, -1.0) / (2 * M_PI);
  CHECK(v[0].real() == doctest::Approx(expect).epsilon(1e-9));
}
