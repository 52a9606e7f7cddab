#include "rieszlab/regularity.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace rieszlab {

TrendFlag detect_divergence(std::vector<double> values, double abs_floor) {
  TrendFlag f;
  f.values = std::move(values);
  const auto& v = f.values;
  if (v.size() < 4) return f;
  std::size_t n = v.size();
  // look at the last three increments
  double d1 = v[n - 3] - v[n - 4];
  double d2 = v[n - 2] - v[n - 3];
  double d3 = v[n - 1] - v[n - 2];
  double scale = std::max(std::abs(v[n - 1]), 1.0) * abs_floor;
  bool increasing = d1 > scale && d2 > scale && d3 > scale;
  if (!increasing) return f;
  bool ratio_growth = v[n - 2] > 0 && v[n - 3] > 0 && v[n - 1] / v[n - 2] >= 1.5 &&
                      v[n - 2] / v[n - 3] >= 1.5;
  // log-type growth: increments do not decay (geometric tails fail this)
  bool steady_increments = d2 >= 0.7 * d1 && d3 >= 0.7 * d2;
  f.divergent = ratio_growth || steady_increments;
  return f;
}

std::vector<double> log_radii(double r_min, double r_max, int count) {
  if (!(r_min > 0) || !(r_max > r_min) || count < 2)
    throw std::invalid_argument("log_radii: bad range");
  std::vector<double> r(count);
  double a = std::log(r_min), b = std::log(r_max);
  for (int i = 0; i < count; ++i) r[i] = std::exp(a + (b - a) * i / (count - 1));
  return r;
}

namespace {
/// sup over radii of mass(r)/r^lambda for one profile, and the per-decade
/// values of that sup restricted to shrinking small-radius windows.
double sup_ratio(const RadialMassProfile& prof, double lambda,
                 const std::vector<double>& radii, std::vector<double>* decade_values) {
  double sup = 0;
  for (double r : radii) {
    double v = prof.mass(r) / std::pow(r, lambda);
    sup = std::max(sup, v);
  }
  if (decade_values) {
    // probe anchored at the smallest admissible radius, one value per decade
    // descending: growth persisting into the small-radius end signals
    // divergence (growth toward an interior maximum does not).
    decade_values->clear();
    double r_hi = radii.back(), r_lo = radii.front();
    int decades = std::max(4, static_cast<int>(std::floor(std::log10(r_hi / r_lo))) + 1);
    for (int k = decades - 1; k >= 0; --k) {
      double r = std::min(r_lo * std::pow(10.0, k), r_hi);
      decade_values->push_back(prof.mass(r) / std::pow(r, lambda));
    }
  }
  return sup;
}
}  // namespace

namespace {
// drop radii below the measure's resolution scale (gridded masses are
// atom-like below one cell and would fake divergence)
std::vector<double> admissible_radii(const VectorMeasure& mu, std::vector<double> radii) {
  // point-counted ball masses are only trustworthy a few cells out
  double scale = 4.0 * mu.resolution_scale();
  std::vector<double> out;
  for (double r : radii)
    if (r >= scale) out.push_back(r);
  if (out.empty() && !radii.empty()) out.push_back(radii.back());
  return out;
}
}  // namespace

double ahlfors_constant(const VectorMeasure& mu, double lambda,
                        const std::vector<RVec>& centers, const std::vector<double>& radii_in,
                        TrendFlag* trend, RVec* witness) {
  if (centers.empty() || radii_in.empty())
    throw std::invalid_argument("ahlfors_constant: empty sample");
  std::vector<double> radii = admissible_radii(mu, radii_in);
  double sup = 0;
  RVec best = centers.front();
  for (const auto& x : centers) {
    RadialMassProfile prof(mu, x);
    double v = sup_ratio(prof, lambda, radii, nullptr);
    if (v > sup) {
      sup = v;
      best = x;
    }
  }
  if (trend) {
    RadialMassProfile prof(mu, best);
    std::vector<double> dec;
    sup_ratio(prof, lambda, radii, &dec);
    *trend = detect_divergence(std::move(dec));
  }
  if (witness) *witness = best;
  return sup;
}

double origin_ahlfors(const VectorMeasure& mu, double lambda,
                      const std::vector<double>& radii_in, TrendFlag* trend) {
  if (radii_in.empty()) throw std::invalid_argument("origin_ahlfors: empty radii set");
  std::vector<double> radii = admissible_radii(mu, radii_in);
  RadialMassProfile prof(mu, RVec::Zero(mu.dim_N()));
  std::vector<double> dec;
  double sup = sup_ratio(prof, lambda, radii, trend ? &dec : nullptr);
  if (trend) *trend = detect_divergence(std::move(dec));
  return sup;
}

namespace {
/// int_{r_lo}^{r_hi} mass(r) / r^{lambda+1} dr, trapezoid in t = log r.
double wolff_integral(const RadialMassProfile& prof, double lambda, double r_lo,
                      double r_hi, int n) {
  if (r_hi <= r_lo || n < 2) return 0;
  double a = std::log(r_lo), b = std::log(r_hi);
  double h = (b - a) / (n - 1);
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    double t = a + i * h;
    double r = std::exp(t);
    double f = prof.mass(r) * std::exp(-lambda * t);  // mass(r)/r^lambda
    sum += (i == 0 || i == n - 1) ? 0.5 * f : f;
  }
  return sum * h;
}
}  // namespace

double wolff_condition(const VectorMeasure& mu, double lambda,
                       const std::vector<RVec>& y_sample, int r_quadrature_points,
                       TrendFlag* trend) {
  double sup = 0;
  const RVec* worst = nullptr;
  for (const auto& y : y_sample) {
    double R = y.norm() / 2.0;
    if (R <= 0) continue;  // empty integral at y = 0
    RadialMassProfile prof(mu, y);
    double r_lo = std::max(R * 1e-4, mu.resolution_scale());
    double v = wolff_integral(prof, lambda, r_lo, R, r_quadrature_points);
    if (v > sup) {
      sup = v;
      worst = &y;
    }
  }
  if (trend) {
    *trend = TrendFlag{};
    if (worst) {
      RadialMassProfile prof(mu, *worst);
      double R = worst->norm() / 2.0;
      std::vector<double> vals;
      for (int k = 1; k <= 6; ++k)  // lower cutoff R * 10^-k
        vals.push_back(wolff_integral(
            prof, lambda, std::max(R * std::pow(10.0, -k), mu.resolution_scale()), R,
            r_quadrature_points));
      *trend = detect_divergence(std::move(vals));
    }
  }
  return sup;
}

double wolff_potential(const VectorMeasure& nu, double alpha, double p, double t,
                       const RVec& x, int quadrature_points, TrendFlag* trend) {
  if (!(alpha > 0) || !(p > 1) || !(t > 0))
    throw std::invalid_argument("wolff_potential: need alpha>0, p>1, t>0");
  RadialMassProfile prof(nu, x);
  double expo = (nu.dim_N() - alpha * p);
  auto integral = [&](double r_lo) {
    if (r_lo >= t) return 0.0;
    double a = std::log(r_lo), b = std::log(t);
    int n = quadrature_points;
    double h = (b - a) / (n - 1);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      double r = std::exp(a + i * h);
      double f = std::pow(prof.mass(r) / std::pow(r, expo), 1.0 / (p - 1.0));
      sum += (i == 0 || i == n - 1) ? 0.5 * f : f;
    }
    return sum * h;
  };
  std::vector<double> vals;
  for (int k = 2; k <= 7; ++k)
    vals.push_back(integral(std::max(t * std::pow(10.0, -k), nu.resolution_scale())));
  double out = vals.back();
  if (trend) *trend = detect_divergence(std::move(vals));
  return out;
}

std::vector<RVec> default_centers(const VectorMeasure& mu, int random_count,
                                  std::uint64_t seed) {
  std::vector<RVec> centers;
  centers.push_back(RVec::Zero(mu.dim_N()));
  if (mu.kind() == VectorMeasure::Kind::Atomic) {
    for (const auto& a : mu.atoms()) centers.push_back(a.point);
  } else {
    // coarse subgrid of cell centers
    std::size_t n = mu.cells();
    std::size_t stride = std::max<std::size_t>(1, n / 64);
    for (std::size_t i = 0; i < n; i += stride) centers.push_back(mu.cell_center(i));
  }
  std::mt19937_64 rng(seed);
  double R = std::max(mu.support_radius(), 1e-6);
  std::uniform_real_distribution<double> u(-1.5 * R, 1.5 * R);
  for (int k = 0; k < random_count; ++k) {
    RVec p(mu.dim_N());
    for (int a = 0; a < mu.dim_N(); ++a) p[a] = u(rng);
    centers.push_back(p);
  }
  return centers;
}

RegularityReport regularity_report(const VectorMeasure& mu, double lambda,
                                   int radii_count, double r_min, double r_max) {
  RegularityReport rep;
  rep.lambda = lambda;
  double scale = std::max(mu.support_radius(), 1.0);
  auto radii = log_radii(r_min * scale, r_max * scale, radii_count);
  auto centers = default_centers(mu);
  rep.center_count = static_cast<int>(centers.size());
  rep.radii_count = radii_count;
  rep.ahlfors = ahlfors_constant(mu, lambda, centers, radii, &rep.ahlfors_trend);
  rep.origin_ahlfors = origin_ahlfors(mu, lambda, radii, &rep.origin_trend);
  // y sample for the Wolff bracket: nonzero centers
  std::vector<RVec> ys;
  for (const auto& c : centers)
    if (c.norm() > 0) ys.push_back(c);
  rep.wolff_bracket = wolff_condition(mu, lambda, ys, 200, &rep.wolff_trend);
  return rep;
}

}  // namespace rieszlab
