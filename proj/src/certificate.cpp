#include "rieszlab/certificate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "rieszlab/sphere.hpp"

namespace rieszlab {

namespace {
constexpr std::uint64_t kSphereSeed = 0x5eed5eedULL;

double default_tol(double max_sigma, double tol) {
  return tol > 0 ? tol : 1e-8 * std::max(max_sigma, 1e-300);
}
}  // namespace

double sphere_surface_area(int N) {
  return 2.0 * std::pow(M_PI, N / 2.0) / std::tgamma(N / 2.0);
}

double ball_volume(int N) { return sphere_surface_area(N) / N; }

std::vector<Eigen::VectorXd> sphere_sample(int N, int count, int random_count,
                                           std::uint64_t seed) {
  count = std::max(count, 2 * N);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count + random_count);
  if (N == 2) {
    for (int k = 0; k < count; ++k) {
      double th = 2.0 * M_PI * k / count;
      Eigen::Vector2d p(std::cos(th), std::sin(th));
      pts.emplace_back(p);
    }
  } else if (N == 3) {
    // Fibonacci spiral
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      double z = 1.0 - (2.0 * k + 1.0) / count;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double th = ga * k;
      Eigen::Vector3d p(r * std::cos(th), r * std::sin(th), z);
      pts.emplace_back(p);
    }
  } else {
    // Halton points -> inverse normal CDF (Acklam) -> normalize
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    auto halton = [](int idx, int base) {
      double f = 1.0, r = 0.0;
      while (idx > 0) {
        f /= base;
        r += f * (idx % base);
        idx /= base;
      }
      return r;
    };
    auto inv_norm = [](double p) {
      // Acklam's rational approximation
      static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
      static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
      static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
      static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
      const double plow = 0.02425, phigh = 1 - plow;
      double q, r;
      if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
      }
      if (p > phigh) {
        q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
      }
      q = p - 0.5;
      r = q * q;
      return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
             (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    };
    for (int k = 0; k < count; ++k) {
      Eigen::VectorXd p(N);
      for (int i = 0; i < N; ++i) {
        double u = halton(k + 1, primes[i % 12]);
        u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
        p[i] = inv_norm(u);
      }
      double n = p.norm();
      if (n < 1e-12) continue;
      pts.emplace_back(p / n);
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < random_count; ++k) {
    Eigen::VectorXd p(N);
    for (int i = 0; i < N; ++i) p[i] = g(rng);
    double n = p.norm();
    if (n < 1e-12) { --k; continue; }
    pts.emplace_back(p / n);
  }
  return pts;
}

CMat range_basis(const CMat& M, double rel_tol) {
  Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0) return CMat::Zero(M.rows(), 0);
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) >= rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

CMat kernel_basis(const CMat& M, double rel_tol) {
  Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double lead = (s.size() > 0) ? s(0) : 0.0;
  int r = 0;
  if (lead > 0)
    for (int i = 0; i < s.size(); ++i)
      if (s(i) >= rel_tol * lead) ++r;
  return svd.matrixV().rightCols(M.cols() - r);
}

CMat subspace_intersection(const CMat& X, const CMat& Y, double angle_tol) {
  if (X.cols() == 0 || Y.cols() == 0) return CMat::Zero(X.rows(), 0);
  CMat M = X.adjoint() * Y;
  Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int k = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) >= 1.0 - angle_tol) ++k;
  if (k == 0) return CMat::Zero(X.rows(), 0);
  CMat Z = X * svd.matrixU().leftCols(k);
  // re-orthonormalize
  Eigen::HouseholderQR<CMat> qr(Z);
  CMat Q = qr.householderQ() * CMat::Identity(Z.rows(), k);
  return Q;
}

StructureCertificate check_ellipticity(const HomogeneousOperator& op,
                                       int sphere_sample_count, double tol) {
  auto pts = sphere_sample(op.dim_N(), sphere_sample_count, 64, kSphereSeed);
  StructureCertificate cert;
  cert.sample_size = static_cast<int>(pts.size());
  cert.sample_seed = kSphereSeed;
  double min_s = std::numeric_limits<double>::infinity();
  double max_s = 0.0;
  for (const auto& xi : pts) {
    Eigen::JacobiSVD<CMat> svd(op.symbol_at(xi));
    const auto& s = svd.singularValues();
    double smin = (s.size() > 0) ? s(s.size() - 1) : 0.0;
    // rank deficiency forced by shape counts as singular value 0
    if (op.dimF() < op.dimE()) smin = 0.0;
    if (s.size() > 0) max_s = std::max(max_s, s(0));
    if (smin < min_s) {
      min_s = smin;
      cert.witness_xi = xi;
    }
  }
  cert.min_singular_value = min_s;
  cert.max_singular_value = max_s;
  cert.tolerance = default_tol(max_s, tol);
  cert.elliptic = (min_s > cert.tolerance);
  return cert;
}

StructureCertificate check_canceling(const HomogeneousOperator& op,
                                     int sphere_sample_count, double tol,
                                     StructureCertificate cert) {
  auto pts = sphere_sample(op.dim_N(), sphere_sample_count, 64, kSphereSeed);
  if (pts.empty()) throw std::invalid_argument("check_canceling: empty sample");
  cert.sample_size = static_cast<int>(pts.size());
  cert.sample_seed = kSphereSeed;
  double rel = (tol > 0) ? tol : 1e-8;
  CMat inter;
  bool first = true;
  for (const auto& xi : pts) {
    CMat R = range_basis(op.symbol_at(xi), rel);
    if (first) {
      inter = R;
      first = false;
    } else {
      inter = subspace_intersection(inter, R, rel);
    }
    if (inter.cols() == 0) break;
  }
  cert.intersection_dim = static_cast<int>(inter.cols());
  cert.intersection_basis.clear();
  for (int j = 0; j < inter.cols(); ++j) cert.intersection_basis.push_back(inter.col(j));
  cert.canceling = (cert.intersection_dim == 0);
  if (cert.tolerance == 0.0) cert.tolerance = rel;
  return cert;
}

CocancelingCertificate check_cocanceling(const HomogeneousOperator& L,
                                         int sphere_sample_count, double tol) {
  auto pts = sphere_sample(L.dim_N(), sphere_sample_count, 64, kSphereSeed);
  if (pts.empty()) throw std::invalid_argument("check_cocanceling: empty sample");
  CocancelingCertificate cert;
  cert.sample_size = static_cast<int>(pts.size());
  cert.sample_seed = kSphereSeed;
  double rel = (tol > 0) ? tol : 1e-8;
  cert.tolerance = rel;
  CMat inter;
  bool first = true;
  for (const auto& xi : pts) {
    CMat K = kernel_basis(L.symbol_at(xi), rel);
    if (first) {
      inter = K;
      first = false;
    } else {
      inter = subspace_intersection(inter, K, rel);
    }
    if (inter.cols() == 0) break;
  }
  cert.intersection_dim = static_cast<int>(inter.cols());
  for (int j = 0; j < inter.cols(); ++j) cert.intersection_basis.push_back(inter.col(j));
  cert.cocanceling = (cert.intersection_dim == 0);
  return cert;
}

AnnihilatorReport verify_annihilator(const HomogeneousOperator& A,
                                     const HomogeneousOperator& L,
                                     int sphere_sample_count, double tol) {
  if (L.dimE() != A.dimF())
    throw std::invalid_argument("verify_annihilator: L domain must equal A codomain");
  auto pts = sphere_sample(A.dim_N(), sphere_sample_count, 64, kSphereSeed);
  AnnihilatorReport rep;
  rep.sample_size = static_cast<int>(pts.size());

  double maxL = 0;
  for (const auto& xi : pts) maxL = std::max(maxL, L.symbol_at(xi).norm());
  if (maxL <= 0) throw std::invalid_argument("verify_annihilator: L has trivial symbol");

  double maxA = 0;
  for (const auto& xi : pts) maxA = std::max(maxA, A.symbol_at(xi).norm());

  rep.containment_all = true;
  for (const auto& xi : pts) {
    double c = (L.symbol_at(xi) * A.symbol_at(xi)).norm() / (maxL * std::max(maxA, 1e-300));
    rep.max_composition_norm = std::max(rep.max_composition_norm, c);
    if (c > tol) {
      rep.containment_all = false;
      ++rep.failed_samples;
    }
  }
  rep.ker_intersection_dim = check_cocanceling(L, sphere_sample_count).intersection_dim;
  rep.range_intersection_dim = check_canceling(A, sphere_sample_count).intersection_dim;
  rep.intersections_match = (rep.ker_intersection_dim == rep.range_intersection_dim);
  return rep;
}

}  // namespace rieszlab
