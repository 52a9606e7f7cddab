#include "rieszlab/ensemble.hpp"

#include <cmath>
#include <random>

namespace rieszlab {

double smoothstep_c2(double t) {
  if (t <= 0) return 1.0;
  if (t >= 1) return 0.0;
  // quintic with zero first and second derivatives at both ends
  double t3 = t * t * t;
  return 1.0 - (10 * t3 - 15 * t3 * t + 6 * t3 * t * t);
}

double radial_cutoff(double r, double inner, double outer) {
  return smoothstep_c2((r - inner) / (outer - inner));
}

GridField ensemble_member(const Box& box, const std::vector<int>& resolution,
                          int value_dim, const EnsembleSpec& spec, int index) {
  GridField u(box, resolution, value_dim);
  int N = box.dim();
  int B = spec.bandwidth > 0 ? spec.bandwidth : std::max(1, resolution[0] / 8);
  std::mt19937_64 rng(spec.seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  std::normal_distribution<double> g(0.0, 1.0);

  // low modes in a centered hypercube of side 2B+1
  std::vector<int> kdim(N, 2 * B + 1);
  std::size_t nmodes = 1;
  for (int d : kdim) nmodes *= d;

  for (int c = 0; c < value_dim; ++c) {
    CVec hat = CVec::Zero(u.total());
    for (std::size_t q = 0; q < nmodes; ++q) {
      std::size_t t = q;
      std::vector<int> k(N);
      for (int a = N - 1; a >= 0; --a) {
        k[a] = static_cast<int>(t % kdim[a]) - B;
        t /= kdim[a];
      }
      Complex coeff(g(rng), g(rng));
      std::vector<int> j(N);
      for (int a = 0; a < N; ++a) j[a] = (k[a] + resolution[a]) % resolution[a];
      hat[u.flat(j)] = coeff;
    }
    fft_inverse(resolution, hat);
    u.comp(c) = hat;
  }
  if (spec.real_valued)
    for (int c = 0; c < value_dim; ++c)
      for (std::size_t i = 0; i < u.total(); ++i) u.comp(c)[i] = u.comp(c)[i].real();

  // compact support in the inner half of the box
  RVec center = 0.5 * (box.lo + box.hi);
  double half_min = 0.5 * box.length(0);
  for (int a = 1; a < N; ++a) half_min = std::min(half_min, 0.5 * box.length(a));
  double outer = 0.5 * half_min;   // support radius = quarter of the box side
  double inner = 0.5 * outer;
  for (std::size_t i = 0; i < u.total(); ++i) {
    double r = (u.point(i) - center).norm();
    double w = radial_cutoff(r, inner, outer);
    for (int c = 0; c < value_dim; ++c) u.comp(c)[i] *= w;
  }
  return u;
}

}  // namespace rieszlab
