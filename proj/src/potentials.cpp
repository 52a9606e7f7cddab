#include "rieszlab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rieszlab/sphere.hpp"

namespace rieszlab {

double riesz_constant(int N, double m) {
  if (!(m > 0) || !(m < N)) throw std::invalid_argument("riesz_constant: need 0 < m < N");
  return std::pow(M_PI, N / 2.0) * std::pow(2.0, m) * std::tgamma(m / 2.0) /
         std::tgamma((N - m) / 2.0);
}

RieszValue riesz_potential_atomic(const VectorMeasure& mu, double m, const RVec& x) {
  if (mu.kind() != VectorMeasure::Kind::Atomic)
    throw std::invalid_argument("riesz_potential_atomic: measure not atomic");
  RieszValue out;
  out.value = CVec::Zero(mu.dimE());
  if (mu.atoms().empty()) return out;
  int N = mu.dim_N();
  double g = riesz_constant(N, m);
  for (const auto& a : mu.atoms()) {
    double d = (a.point - x).norm();
    if (d == 0) {
      out.singular = true;
      continue;
    }
    out.value += a.weight * (std::pow(d, m - N) / g);
  }
  return out;
}

namespace {
/// Kernel |z|^{m-N} with the near-field value averaged over the equal-volume
/// ball of radius rho.
double regularized_kernel(double d, double m, int N, double rho) {
  if (d >= rho) return std::pow(d, m - N);
  return (N / m) * std::pow(rho, m - N);
}
}  // namespace

CVec riesz_potential_eval(const VectorMeasure& mu, double m, const RVec& x) {
  int N = mu.dim_N();
  double g = riesz_constant(N, m);
  CVec out = CVec::Zero(mu.dimE());
  if (mu.kind() == VectorMeasure::Kind::Atomic) {
    for (const auto& a : mu.atoms()) {
      double d = (a.point - x).norm();
      if (d == 0) continue;  // singular; caller should use riesz_potential_atomic
      out += a.weight * (std::pow(d, m - N) / g);
    }
    return out;
  }
  double vol = mu.cell_volume();
  double rho = std::pow(N * vol / sphere_surface_area(N), 1.0 / N);
  for (std::size_t i = 0; i < mu.cells(); ++i) {
    bool any = false;
    for (const auto& comp : mu.density())
      if (std::abs(comp[i]) > 0) { any = true; break; }
    if (!any) continue;
    double k = regularized_kernel((mu.cell_center(i) - x).norm(), m, N, rho) * vol / g;
    for (int c = 0; c < mu.dimE(); ++c) out[c] += mu.density()[c][i] * k;
  }
  return out;
}

GridField riesz_potential_grid(const VectorMeasure& mu, double m, int padding_factor) {
  if (mu.kind() != VectorMeasure::Kind::Gridded)
    throw std::invalid_argument("riesz_potential_grid: measure not gridded");
  int N = mu.dim_N();
  if (!(m < N)) throw std::invalid_argument("riesz_potential_grid: need m < N");
  double g = riesz_constant(N, m);
  const auto& res = mu.resolution();
  std::vector<int> pres(res);
  for (auto& n : pres) n *= padding_factor;
  std::size_t ptotal = 1;
  for (int n : pres) ptotal *= n;

  double vol = mu.cell_volume();
  double rho = std::pow(N * vol / sphere_surface_area(N), 1.0 / N);

  // kernel at wrapped displacement of each padded-lattice index
  CVec kernel = CVec::Zero(ptotal);
  std::vector<double> h(N);
  for (int a = 0; a < N; ++a) h[a] = mu.box().length(a) / res[a];
  for (std::size_t idx = 0; idx < ptotal; ++idx) {
    std::size_t t = idx;
    double d2 = 0;
    for (int a = N - 1; a >= 0; --a) {
      int n = pres[a];
      int j = static_cast<int>(t % n);
      t /= n;
      int k = (j <= n / 2) ? j : j - n;
      double z = k * h[a];
      d2 += z * z;
    }
    kernel[idx] = regularized_kernel(std::sqrt(d2), m, N, rho) / g;
  }
  fft_forward(pres, kernel);

  GridField out(mu.box(), res, mu.dimE(), padding_factor);
  for (int c = 0; c < mu.dimE(); ++c) {
    CVec emb = CVec::Zero(ptotal);
    // embed source cells at the low corner of the padded index space
    for (std::size_t i = 0; i < mu.cells(); ++i) {
      std::size_t t = i, pidx = 0;
      std::vector<int> ji(N);
      for (int a = N - 1; a >= 0; --a) {
        ji[a] = static_cast<int>(t % res[a]);
        t /= res[a];
      }
      for (int a = 0; a < N; ++a) pidx = pidx * pres[a] + ji[a];
      emb[pidx] = mu.density()[c][i];
    }
    fft_forward(pres, emb);
    emb = emb.cwiseProduct(kernel);
    fft_inverse(pres, emb);
    // read back the source block
    for (std::size_t i = 0; i < mu.cells(); ++i) {
      std::size_t t = i, pidx = 0;
      std::vector<int> ji(N);
      for (int a = N - 1; a >= 0; --a) {
        ji[a] = static_cast<int>(t % res[a]);
        t /= res[a];
      }
      for (int a = 0; a < N; ++a) pidx = pidx * pres[a] + ji[a];
      out.comp(c)[i] = emb[pidx] * vol;
    }
  }
  return out;
}

namespace {
struct QuadraturePoint {
  RVec x;
  double weight;  // volume weight
};

/// Radial-angular quadrature nodes over B_{r_max}: linear radii inside
/// [0, 2 * core], then log-spaced to r_max; directions from the deterministic
/// sphere sample.
std::vector<QuadraturePoint> ball_quadrature(int N, double core, double r_max, int angular,
                                             int radial_per_decade) {
  auto dirs = sphere_sample(N, angular, 0);
  double area_per_dir = sphere_surface_area(N) / dirs.size();
  std::vector<double> radii, weights;  // r and dr weights (trapezoid)
  double inner = std::min(2.0 * core, r_max);
  int n_lin = 64;
  for (int i = 1; i <= n_lin; ++i) radii.push_back(inner * i / n_lin);
  if (r_max > inner) {
    int decades = std::max(1, static_cast<int>(std::ceil(std::log10(r_max / inner))));
    int n_log = radial_per_decade * decades;
    double a = std::log(inner), b = std::log(r_max);
    for (int i = 1; i <= n_log; ++i) radii.push_back(std::exp(a + (b - a) * i / n_log));
  }
  weights.resize(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double lo = (i == 0) ? 0.0 : 0.5 * (radii[i - 1] + radii[i]);
    double hi = (i + 1 == radii.size()) ? radii[i] : 0.5 * (radii[i] + radii[i + 1]);
    weights[i] = hi - lo;
  }
  std::vector<QuadraturePoint> pts;
  pts.reserve(radii.size() * dirs.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double r = radii[i];
    double w = std::pow(r, N - 1) * weights[i] * area_per_dir;
    for (const auto& u : dirs) pts.push_back({r * u, w});
  }
  return pts;
}
}  // namespace

EnergyReport energy(const VectorMeasure& mu, double m, double p,
                    const std::vector<double>& R_list, int angular, int radial_per_decade) {
  if (!(p >= 1)) throw std::invalid_argument("energy: need p >= 1");
  int N = mu.dim_N();
  if (!(m > 0) || !(m < N)) throw std::invalid_argument("energy: need 0 < m < N");
  EnergyReport rep;
  rep.m = m;
  rep.p = p;
  rep.R_list = R_list;
  double core = std::max(mu.support_radius(), 1e-3);
  double R_max = *std::max_element(R_list.begin(), R_list.end());
  auto pts = ball_quadrature(N, core, R_max, angular, radial_per_decade);
  // integrand at all points once; then accumulate per R
  std::vector<double> radius(pts.size()), val(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    radius[i] = pts[i].x.norm();
    val[i] = std::pow(riesz_potential_eval(mu, m, pts[i].x).norm(), p) * pts[i].weight;
  }
  for (double R : R_list) {
    double s = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (radius[i] <= R) s += val[i];
    rep.truncated.push_back(s);
  }
  rep.divergent = detect_divergence(rep.truncated);
  return rep;
}

WeakEnergyReport weak_energy(const VectorMeasure& mu, double m, double r_max,
                             int lambda_count, int angular, int radial_per_decade) {
  int N = mu.dim_N();
  WeakEnergyReport rep;
  double core = std::max(mu.support_radius(), 1e-3);
  auto pts = ball_quadrature(N, core, r_max, angular, radial_per_decade);
  std::vector<double> radius(pts.size()), val(pts.size());
  double vmax = 0, vmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    radius[i] = pts[i].x.norm();
    val[i] = riesz_potential_eval(mu, m, pts[i].x).norm();
    if (val[i] > 0) {
      vmax = std::max(vmax, val[i]);
      vmin = std::min(vmin, val[i]);
    }
  }
  if (vmax <= 0) return rep;
  vmin = std::max(vmin, vmax * 1e-12);
  rep.lambda_grid = log_radii(vmin, vmax, lambda_count);
  auto quasinorm_within = [&](double rcap) {
    double best = 0;
    for (double lam : rep.lambda_grid) {
      double volume = 0;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (radius[i] <= rcap && val[i] > lam) volume += pts[i].weight;
      best = std::max(best, lam * volume);
    }
    return best;
  };
  rep.level_volumes.resize(rep.lambda_grid.size());
  for (std::size_t j = 0; j < rep.lambda_grid.size(); ++j) {
    double volume = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (val[i] > rep.lambda_grid[j]) volume += pts[i].weight;
    rep.level_volumes[j] = volume;
  }
  rep.quasinorm = quasinorm_within(r_max);
  std::vector<double> doms;  // nested growing domains
  for (int k = 3; k >= 0; --k) doms.push_back(quasinorm_within(r_max * std::pow(10.0, -k)));
  rep.domain_trend = detect_divergence(std::move(doms));
  return rep;
}

RieszIdentityReport verify_riesz_identity(const HomogeneousOperator& op, const GridField& f) {
  int m = op.order_m();
  if (!(m < op.dim_N()))
    throw std::invalid_argument("verify_riesz_identity: need m < N");
  // mu := A*(D)f, lhs := I_m mu (torus multiplier |xi|^{-m})
  GridField mu = apply_adjoint(op, f);
  GridField lhs = riesz_multiplier(mu, static_cast<double>(m));
  // rhs := sum_alpha a_alpha^H R^alpha f, assembled per mode
  Complex im_phase = std::pow(Complex(0, -1), m);  // (-i)^m
  GridField rhs = apply_multiplier(
      f, op.dimE(),
      [&](const RVec& xi) {
        CMat M = CMat::Zero(op.dimE(), op.dimF());
        double nm = std::pow(xi.norm(), m);
        for (const auto& [alpha, a] : op.coeffs())
          M += a.adjoint() * (im_phase * monomial(alpha, xi.data()) / nm);
        return M;
      },
      true);
  // least-squares scalar fit lhs ~= c rhs
  Complex num = 0;
  double den = 0, l2 = 0;
  for (int c = 0; c < op.dimE(); ++c) {
    num += rhs.comp(c).dot(lhs.comp(c));  // conj(rhs) . lhs
    den += rhs.comp(c).squaredNorm();
    l2 += lhs.comp(c).squaredNorm();
  }
  RieszIdentityReport rep;
  rep.lhs_norm = std::sqrt(l2);
  rep.rhs_norm = std::sqrt(den);
  if (den == 0) {
    rep.relative_residual = (l2 == 0) ? 0 : 1;
    return rep;
  }
  rep.fitted_constant = num / den;
  double resid = 0;
  for (int c = 0; c < op.dimE(); ++c)
    resid += (lhs.comp(c) - rep.fitted_constant * rhs.comp(c)).squaredNorm();
  rep.relative_residual = std::sqrt(resid) / std::max(rep.lhs_norm, 1e-300);
  return rep;
}

}  // namespace rieszlab
