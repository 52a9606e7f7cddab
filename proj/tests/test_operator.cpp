#include <doctest.h>

#include <random>

#include "rieszlab/operator.hpp"

using namespace rieszlab;

TEST_CASE("multi-index enumeration and monomials") {
  auto idx1 = multi_indices_of_order(3, 1);
  CHECK(idx1.size() == 3);
  auto idx2 = multi_indices_of_order(3, 2);
  CHECK(idx2.size() == 6);  // (k+N-1 choose N-1) = 6
  auto idx3 = multi_indices_of_order(2, 3);
  CHECK(idx3.size() == 4);

  RVec xi(2);
  xi << 2.0, 3.0;
  MultiIndex a;
  a.entries = {1, 2};
  CHECK(monomial(a, xi.data()) == doctest::Approx(2.0 * 9.0));
}

TEST_CASE("gradient symbol") {
  auto op = catalog::gradient(3);
  CHECK(op.dimE() == 1);
  CHECK(op.dimF() == 3);
  RVec xi(3);
  xi << 1.0, -2.0, 0.5;
  CMat A = op.symbol_at(xi);
  for (int j = 0; j < 3; ++j) CHECK(A(j, 0).real() == doctest::Approx(xi[j]));
}

TEST_CASE("laplacian symbol is |xi|^2") {
  auto op = catalog::laplacian(2);
  RVec xi(2);
  xi << 3.0, 4.0;
  CHECK(op.symbol_at(xi)(0, 0).real() == doctest::Approx(25.0));
}

TEST_CASE("divergence symbol pairs with xi") {
  auto L = catalog::divergence(3);
  RVec xi(3);
  xi << 1.0, 2.0, 3.0;
  CMat M = L.symbol_at(xi);
  CHECK(M.rows() == 1);
  CHECK(M.cols() == 3);
  for (int j = 0; j < 3; ++j) CHECK(M(0, j).real() == doctest::Approx(xi[j]));
}

TEST_CASE("curl3 symbol is the cross product") {
  auto L = catalog::curl3();
  RVec xi(3);
  xi << 1.0, 2.0, 3.0;
  CMat M = L.symbol_at(xi);
  CVec f(3);
  f << Complex(1, 0), Complex(0, 1), Complex(-2, 0);
  CVec lhs = M * f;
  // xi x f
  CVec cross(3);
  cross << xi[1] * f[2] - xi[2] * f[1], xi[2] * f[0] - xi[0] * f[2],
      xi[0] * f[1] - xi[1] * f[0];
  CHECK((lhs - cross).norm() == doctest::Approx(0.0));
}

TEST_CASE("homogeneity of the symbol") {
  auto op = catalog::total_derivative(3, 2);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.1, 5.0);
  for (int k = 0; k < 50; ++k) {
    RVec xi(3);
    for (int a = 0; a < 3; ++a) xi[a] = uni(rng);
    double t = pos(rng);
    CMat lhs = op.symbol_at(RVec(t * xi));
    CMat rhs = std::pow(t, op.order_m()) * op.symbol_at(xi);
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
  }
}

TEST_CASE("adjoint involution") {
  auto op = catalog::curl3();
  auto back = op.adjoint().adjoint();
  RVec xi(3);
  xi << 0.3, -1.2, 2.1;
  CHECK((op.symbol_at(xi) - back.symbol_at(xi)).norm() == doctest::Approx(0.0));
}

TEST_CASE("adjoint symbol convention") {
  // A*(D) of gradient is -div: symbol of the adjoint operator equals
  // conj(i^m) A(xi)^H once the i^m phase is tracked; here check shape + values
  auto op = catalog::gradient(2);
  auto adj = op.adjoint();
  CHECK(adj.dimE() == 2);
  CHECK(adj.dimF() == 1);
  CHECK(adj.order_m() == 1);
  RVec xi(2);
  xi << 1.0, 2.0;
  // coefficients of adjoint are (-1)^m a_alpha^H
  CMat M = adj.symbol_at(xi);
  CHECK(M(0, 0).real() == doctest::Approx(-1.0));
  CHECK(M(0, 1).real() == doctest::Approx(-2.0));
}

TEST_CASE("constructor rejects malformed operators") {
  MultiIndex a0;
  a0.entries = {0, 0};
  std::map<MultiIndex, CMat> inhom{{a0, CMat::Ones(1, 1)}};
  CHECK_THROWS_AS(HomogeneousOperator(2, 1, 1, 1, inhom), OperatorParseError);

  MultiIndex a1;
  a1.entries = {1, 0};
  std::map<MultiIndex, CMat> badshape{{a1, CMat::Ones(2, 2)}};
  CHECK_THROWS_AS(HomogeneousOperator(2, 1, 1, 1, badshape), OperatorParseError);

  std::map<MultiIndex, CMat> zero{{a1, CMat::Zero(1, 1)}};
  CHECK_THROWS_AS(HomogeneousOperator(2, 1, 1, 1, zero), OperatorParseError);

  std::map<MultiIndex, CMat> ok{{a1, CMat::Ones(1, 1)}};
  CHECK_THROWS_AS(HomogeneousOperator(1, 1, 1, 1, ok), OperatorParseError);
}
