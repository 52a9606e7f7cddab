#include <doctest.h>

#include <cmath>

#include "rieszlab/spectral.hpp"

using namespace rieszlab;

namespace {

GridField scalar_field(int N, int res, double half_side,
                       const std::function<double(const RVec&)>& f) {
  GridField u(Box::centered_cube(N, half_side), std::vector<int>(N, res), 1);
  u.fill([&](const RVec& x) {
    CVec v(1);
    v[0] = f(x);
    return v;
  });
  return u;
}

double rel_l2(const GridField& a, const GridField& b) {
  double num = 0, den = 0;
  for (int c = 0; c < a.value_dim(); ++c) {
    num += (a.comp(c) - b.comp(c)).squaredNorm();
    den += b.comp(c).squaredNorm();
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace

TEST_CASE("partial derivative of sin is cos") {
  auto u = scalar_field(2, 64, M_PI, [](const RVec& x) { return std::sin(x[0]); });
  auto d = apply_operator(catalog::partial(2, 0), u);
  auto expect = scalar_field(2, 64, M_PI, [](const RVec& x) { return std::cos(x[0]); });
  CHECK(rel_l2(d, expect) < 1e-12);
}

TEST_CASE("derivative of a constant is zero") {
  auto u = scalar_field(2, 32, 1.0, [](const RVec&) { return 3.5; });
  auto d = apply_operator(catalog::gradient(2), u);
  for (int c = 0; c < 2; ++c) CHECK(d.comp(c).norm() < 1e-12);
}

TEST_CASE("laplacian agrees with the -|xi|^2 multiplier") {
  GridField u(Box::centered_cube(2, 2.0), {32, 32}, 1);
  // band-limited random data
  u.fill([](const RVec& x) {
    CVec v(1);
    v[0] = std::sin(2 * M_PI * x[0] / 4.0) + 0.5 * std::cos(2 * M_PI * (x[0] + 2 * x[1]) / 4.0);
    return v;
  });
  auto lhs = apply_operator(catalog::laplacian(2), u);
  auto rhs = apply_multiplier(
      u, 1,
      [](const RVec& xi) {
        CMat m(1, 1);
        m(0, 0) = -xi.squaredNorm();
        return m;
      },
      false);
  CHECK(rel_l2(lhs, rhs) < 1e-12);
}

TEST_CASE("riesz transform sign convention: R_1 cos(x1) = sin(x1)") {
  auto u = scalar_field(2, 64, M_PI, [](const RVec& x) { return std::cos(x[0]); });
  auto r = riesz_transform(u, MultiIndex::unit(2, 0));
  auto expect = scalar_field(2, 64, M_PI, [](const RVec& x) { return std::sin(x[0]); });
  CHECK(rel_l2(r, expect) < 1e-12);
}

TEST_CASE("sum of squared riesz transforms is minus identity") {
  auto u = scalar_field(2, 32, 2.0, [](const RVec& x) {
    return std::sin(M_PI * x[0]) * std::cos(M_PI / 2 * x[1]);
  });
  u.subtract_mean();
  GridField sum = u;
  for (int c = 0; c < 1; ++c) sum.comp(c).setZero();
  for (int j = 0; j < 2; ++j) {
    auto rj = riesz_transform(riesz_transform(u, MultiIndex::unit(2, j)),
                              MultiIndex::unit(2, j));
    sum.comp(0) += rj.comp(0);
  }
  GridField neg = u;
  neg.comp(0) = -neg.comp(0);
  CHECK(rel_l2(sum, neg) < 1e-12);
}

TEST_CASE("fractional laplacian composes") {
  auto u = scalar_field(2, 32, 1.0, [](const RVec& x) {
    return std::cos(2 * M_PI * x[0]) + std::sin(4 * M_PI * x[1]);
  });
  auto a = fractional_laplacian(fractional_laplacian(u, 0.7), 1.3);
  auto b = fractional_laplacian(u, 2.0);
  CHECK(rel_l2(a, b) < 1e-12);
}

TEST_CASE("riesz multiplier inverts the fractional laplacian on mean-free fields") {
  auto u = scalar_field(2, 32, 1.0,
                        [](const RVec& x) { return std::sin(2 * M_PI * x[0]); });
  auto back = riesz_multiplier(fractional_laplacian(u, 1.5), 1.5);
  CHECK(rel_l2(back, u) < 1e-12);
}

TEST_CASE("derivative tuple stacks all partials") {
  auto u = scalar_field(2, 64, M_PI,
                        [](const RVec& x) { return std::sin(x[0]) * std::sin(x[1]); });
  auto d2 = derivative_tuple(u, 2);
  CHECK(d2.value_dim() == 3);  // (2,0), (1,1), (0,2) in lexicographic order
  auto dxx = scalar_field(2, 64, M_PI,
                          [](const RVec& x) { return -std::sin(x[0]) * std::sin(x[1]); });
  // identify the (2,0) slot
  auto idx = multi_indices_of_order(2, 2);
  int slot = -1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (idx[i].entries == std::vector<int>{2, 0}) slot = static_cast<int>(i);
  REQUIRE(slot >= 0);
  CHECK((d2.comp(slot) - dxx.comp(0)).norm() / dxx.comp(0).norm() < 1e-12);
}

TEST_CASE("spectral derivative matches 4th-order finite differences under refinement") {
  auto f = [](const RVec& x) { return std::exp(std::sin(x[0]) + std::cos(x[1])); };
  double prev_err = -1;
  for (int res : {16, 32, 64}) {
    auto u = scalar_field(2, res, M_PI, f);
    auto d = apply_operator(catalog::partial(2, 0), u);
    double h = u.spacing(0);
    double err = 0, den = 0;
    for (int i = 0; i < res; ++i)
      for (int j = 0; j < res; ++j) {
        auto at = [&](int ii) {
          std::vector<int> id{(ii % res + res) % res, j};
          return u.comp(0)[u.flat(id)].real();
        };
        double fd = (-at(i + 2) + 8 * at(i + 1) - 8 * at(i - 1) + at(i - 2)) / (12 * h);
        double sp = d.comp(0)[u.flat({i, j})].real();
        err += (fd - sp) * (fd - sp);
        den += sp * sp;
      }
    err = std::sqrt(err / den);
    if (prev_err > 0) CHECK(err < prev_err / 8.0);  // ~O(h^4)
    prev_err = err;
  }
}
