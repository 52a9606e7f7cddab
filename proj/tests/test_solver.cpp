#include <doctest.h>

#include <cmath>

#include "rieszlab/potentials.hpp"
#include "rieszlab/solver.hpp"
#include "rieszlab/spectral.hpp"

using namespace rieszlab;

namespace {

VectorMeasure gaussian_bump(int N, double half_side, int res) {
  Box b = Box::centered_cube(N, half_side);
  GridField probe(b, std::vector<int>(N, res), 1);
  std::vector<CVec> den(1, CVec::Zero(probe.total()));
  for (std::size_t i = 0; i < probe.total(); ++i)
    den[0][i] = std::exp(-probe.point(i).squaredNorm());
  return VectorMeasure::gridded(b, std::vector<int>(N, res), den);
}

VectorMeasure hot_cell(int N, double half_side, int res) {
  Box b = Box::centered_cube(N, half_side);
  GridField probe(b, std::vector<int>(N, res), 1);
  std::vector<CVec> den(1, CVec::Zero(probe.total()));
  // cell nearest the origin carries unit mass
  std::vector<int> j(N, res / 2);
  den[0][probe.flat(j)] = 1.0 / probe.cell_volume();
  return VectorMeasure::gridded(b, std::vector<int>(N, res), den);
}

}  // namespace

TEST_CASE("multiplier H is a left inverse of the symbol") {
  for (const char* which : {"grad", "d2"}) {
    HomogeneousOperator op = which[0] == 'g' ? catalog::gradient(2)
                                             : catalog::total_derivative(2, 2);
    RVec xi(2);
    xi << 0.7, -1.9;
    CMat H = multiplier_H(op, xi);
    CMat I = H * op.symbol_at(xi);
    CHECK((I - CMat::Identity(op.dimE(), op.dimE())).norm() < 1e-12);
  }
  RVec bad(2);
  bad << 0.0, 1.0;  // d_1 symbol vanishes here
  CHECK_THROWS_AS(multiplier_H(catalog::partial(2, 0), bad), SolverError);
}

TEST_CASE("solve then apply recovers the mean-adjusted measure") {
  auto mu = gaussian_bump(2, 4.0, 64);
  auto res = solve_measure(catalog::gradient(2), mu, {2.0, 3.0});
  CHECK(res.spectral_residual < 1e-10);
  CHECK(res.mean_adjustment.norm() > 0);  // bump has positive mean
  CHECK(res.lp_norms.at(2.0) > 0);
  CHECK(std::isfinite(res.lp_norms.at(std::numeric_limits<double>::infinity())));

  EnsembleSpec spec;
  spec.seed = 77;
  spec.count = 20;
  CHECK(weak_residual(catalog::gradient(2), res.f, mu, spec) < 1e-8);
}

TEST_CASE("gauge invariance: constants lie in the kernel of A*(D)") {
  auto mu = gaussian_bump(2, 4.0, 32);
  auto res = solve_measure(catalog::gradient(2), mu, {2.0});
  GridField shifted = res.f;
  for (int c = 0; c < shifted.value_dim(); ++c)
    shifted.comp(c).array() += Complex(2.5, -1.0);
  GridField a = apply_adjoint(catalog::gradient(2), res.f);
  GridField b = apply_adjoint(catalog::gradient(2), shifted);
  double diff = 0;
  for (int c = 0; c < a.value_dim(); ++c) diff += (a.comp(c) - b.comp(c)).norm();
  CHECK(diff < 1e-10);
}

TEST_CASE("solve works for the second-order total derivative") {
  auto mu = gaussian_bump(2, 4.0, 64);
  auto res = solve_measure(catalog::total_derivative(2, 2), mu, {2.0});
  CHECK(res.spectral_residual < 1e-10);
  EnsembleSpec spec;
  spec.seed = 78;
  spec.count = 10;
  CHECK(weak_residual(catalog::total_derivative(2, 2), res.f, mu, spec) < 1e-8);
}

TEST_CASE("delta-like data: sup and L3 grow under refinement, L1.5 stays put") {
  // |f| ~ |x|^{-1} near the atom: subcritical norms converge, the sup and the
  // supercritical L^3 norm diverge as the cell shrinks
  double prev_sup = 0;
  double prev_l15 = -1;
  for (int res : {32, 64, 128}) {
    auto mu = hot_cell(2, 2.0, res);
    auto sol = solve_measure(catalog::gradient(2), mu, {1.5, 3.0});
    double sup = sol.lp_norms.at(std::numeric_limits<double>::infinity());
    CHECK(sup > 1.8 * prev_sup);
    prev_sup = sup;
    if (prev_l15 > 0)
      CHECK(std::abs(sol.lp_norms.at(1.5) - prev_l15) <= 0.05 * prev_l15);
    prev_l15 = sol.lp_norms.at(1.5);
  }
}

TEST_CASE("kernel profile of the gradient in N=2 matches the closed form") {
  // K(x) = x / (2 pi |x|^2): homogeneity -1, ||K|| |x| = 1/(2 pi),
  // ||grad K|| |x|^2 = sqrt(2)/(2 pi)
  auto prof = kernel_K(catalog::gradient(2), 256, 1.0);
  CHECK(prof.homogeneity_exponent_fit == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(prof.bound_constant_ka == doctest::Approx(1.0 / (2 * M_PI)).epsilon(0.1));
  CHECK(prof.bound_constant_kb ==
        doctest::Approx(std::sqrt(2.0) / (2 * M_PI)).epsilon(0.15));

  // pointwise check off-axis
  RVec x(2);
  x << 0.25, 0.125;
  CMat K = kernel_at(prof, x);
  CVec expect(2);
  double r2 = x.squaredNorm();
  expect << Complex(x[0] / (2 * M_PI * r2), 0), Complex(x[1] / (2 * M_PI * r2), 0);
  CHECK((K.transpose() - expect).norm() / expect.norm() < 0.1);
}

TEST_CASE("kernel profile of the laplacian in N=3") {
  // K(x) = -1/(4 pi |x|): homogeneity -1 = m - N
  auto prof = kernel_K(catalog::laplacian(3), 128, 1.0);
  CHECK(prof.homogeneity_exponent_fit == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(prof.bound_constant_ka == doctest::Approx(1.0 / (4 * M_PI)).epsilon(0.1));
}

TEST_CASE("reproducing identity on the torus") {
  Box b = Box::centered_cube(2, 4.0);
  EnsembleSpec spec;
  spec.seed = 9;
  GridField u = ensemble_member(b, {128, 128}, 1, spec, 0);
  auto rep = reproduce_u(catalog::gradient(2), u, 4);
  CHECK(rep.spectral_error < 1e-10);
  CHECK(rep.realspace_error < 5e-3);
  CHECK(rep.domination_margin < 1e-8);
}

TEST_CASE("non-gridded or mismatched input is rejected") {
  VectorMeasure::Atom a;
  a.point = RVec::Zero(2);
  a.weight = CVec::Constant(1, Complex(1, 0));
  auto atom = VectorMeasure::atomic(2, 1, {a});
  CHECK_THROWS(solve_measure(catalog::gradient(2), atom, {2.0}));
}
