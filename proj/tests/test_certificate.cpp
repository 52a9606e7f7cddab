#include <doctest.h>

#include <random>

#include "rieszlab/certificate.hpp"
#include "rieszlab/sphere.hpp"

using namespace rieszlab;

TEST_CASE("catalog verdicts") {
  for (int N : {2, 3}) {
    auto grad = check_canceling(catalog::gradient(N), 128, 0.0,
                                check_ellipticity(catalog::gradient(N), 128));
    CHECK(grad.elliptic.value());
    CHECK(grad.canceling.value());
    CHECK(grad.intersection_dim == 0);

    auto lap = check_canceling(catalog::laplacian(N), 128, 0.0,
                               check_ellipticity(catalog::laplacian(N), 128));
    CHECK(lap.elliptic.value());
    CHECK_FALSE(lap.canceling.value());
    CHECK(lap.intersection_dim == 1);
  }
  auto part = check_ellipticity(catalog::partial(2, 0), 128);
  CHECK_FALSE(part.elliptic.value());
  // witness direction should nearly annihilate the symbol
  CHECK(catalog::partial(2, 0).symbol_at(part.witness_xi).norm() ==
        doctest::Approx(part.min_singular_value).epsilon(1e-6));

  CHECK(check_cocanceling(catalog::divergence(2), 128).cocanceling);
  CHECK(check_cocanceling(catalog::divergence(3), 128).cocanceling);
  CHECK(check_cocanceling(catalog::curl2(), 128).cocanceling);
  CHECK(check_cocanceling(catalog::curl3(), 128).cocanceling);
}

TEST_CASE("scaling invariance of verdicts") {
  auto grad = catalog::gradient(2);
  for (double c : {3.0, -0.2}) {
    std::map<MultiIndex, CMat> coeffs;
    for (const auto& [alpha, a] : grad.coeffs()) coeffs[alpha] = c * a;
    HomogeneousOperator scaled(2, 1, 1, 2, coeffs);
    auto cert = check_canceling(scaled, 96, 0.0, check_ellipticity(scaled, 96));
    CHECK(cert.elliptic.value());
    CHECK(cert.canceling.value());
  }
}

TEST_CASE("certificate consistency") {
  auto grad = check_canceling(catalog::gradient(3), 96, 0.0,
                              check_ellipticity(catalog::gradient(3), 96));
  CHECK(grad.min_singular_value > grad.tolerance);
  CHECK(grad.intersection_basis.empty());
}

namespace {

// brute-force oracle: intersection dimension of the ranges over the sample,
// via rank of the stacked orthogonal-complement projectors
int brute_force_range_intersection(const HomogeneousOperator& op,
                                   const std::vector<RVec>& dirs) {
  int dF = op.dimF();
  CMat stack(0, dF);
  for (const auto& xi : dirs) {
    CMat Q = range_basis(op.symbol_at(xi), 1e-10);
    // projector onto the orthogonal complement of the range
    CMat P = CMat::Identity(dF, dF) - Q * Q.adjoint();
    CMat grown(stack.rows() + dF, dF);
    grown << stack, P;
    stack = grown;
  }
  Eigen::JacobiSVD<CMat> svd(stack);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-8 * svd.singularValues()(0)) ++rank;
  return dF - rank;  // common null space of all complement projectors
}

}  // namespace

TEST_CASE("range intersection matches a brute-force oracle") {
  auto dirs2 = sphere_sample(2, 48, 16, 99);
  auto dirs3 = sphere_sample(3, 48, 16, 99);
  {
    auto op = catalog::gradient(2);
    auto cert = check_canceling(op, 48);
    CHECK(cert.intersection_dim == brute_force_range_intersection(op, dirs2));
  }
  {
    auto op = catalog::laplacian(2);
    auto cert = check_canceling(op, 48);
    CHECK(cert.intersection_dim == brute_force_range_intersection(op, dirs2));
  }
  {
    auto op = catalog::total_derivative(3, 2);
    auto cert = check_canceling(op, 48);
    CHECK(cert.intersection_dim == brute_force_range_intersection(op, dirs3));
  }
}

TEST_CASE("annihilator verification") {
  // curl-type annihilator of the gradient in N=2
  auto rep = verify_annihilator(catalog::gradient(2), catalog::curl2(), 96);
  CHECK(rep.containment_all);
  CHECK(rep.failed_samples == 0);
  CHECK(rep.intersections_match);

  // div does not annihilate grad (div grad = laplacian)
  auto bad = verify_annihilator(catalog::gradient(2), catalog::divergence(2), 96);
  CHECK_FALSE(bad.containment_all);
  CHECK(bad.failed_samples > 0);

  // curl in N=3 annihilates grad
  auto rep3 = verify_annihilator(catalog::gradient(3), catalog::curl3(), 96);
  CHECK(rep3.containment_all);
}

TEST_CASE("subspace intersection basics") {
  CMat X(3, 2), Y(3, 2);
  X.setZero();
  Y.setZero();
  X(0, 0) = 1;
  X(1, 1) = 1;  // span{e1, e2}
  Y(1, 0) = 1;
  Y(2, 1) = 1;  // span{e2, e3}
  CMat Z = subspace_intersection(X, Y);
  REQUIRE(Z.cols() == 1);
  CHECK(std::abs(Z(1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("kernel and range bases") {
  CMat M(2, 3);
  M.setZero();
  M(0, 0) = 1;
  M(1, 1) = 1;
  CHECK(kernel_basis(M, 1e-10).cols() == 1);
  CHECK(range_basis(M, 1e-10).cols() == 2);
}
