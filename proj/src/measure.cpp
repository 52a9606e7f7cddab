#include "rieszlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rieszlab/sphere.hpp"

namespace rieszlab {

namespace {
void check_positive_parts(const Complex& w, const char* what) {
  if (w.real() < 0 || w.imag() < 0)
    throw std::invalid_argument(std::string(what) + ": negative component part");
}
}  // namespace

VectorMeasure VectorMeasure::atomic(int dim_N, int dimE, std::vector<Atom> atoms) {
  VectorMeasure mu;
  mu.kind_ = Kind::Atomic;
  mu.dim_N_ = dim_N;
  mu.dimE_ = dimE;
  for (const auto& a : atoms) {
    if (a.point.size() != dim_N || a.weight.size() != dimE)
      throw std::invalid_argument("VectorMeasure: atom dimension mismatch");
    for (int c = 0; c < dimE; ++c) check_positive_parts(a.weight[c], "atom weight");
  }
  mu.atoms_ = std::move(atoms);
  return mu;
}

VectorMeasure VectorMeasure::gridded(Box box, std::vector<int> resolution,
                                     std::vector<CVec> density) {
  VectorMeasure mu;
  mu.kind_ = Kind::Gridded;
  mu.dim_N_ = box.dim();
  mu.dimE_ = static_cast<int>(density.size());
  if (mu.dimE_ < 1) throw std::invalid_argument("VectorMeasure: empty density");
  std::size_t total = 1;
  for (int n : resolution) total *= n;
  for (const auto& d : density) {
    if (d.size() != static_cast<Eigen::Index>(total))
      throw std::invalid_argument("VectorMeasure: density size mismatch");
    for (Eigen::Index i = 0; i < d.size(); ++i) check_positive_parts(d[i], "density");
  }
  mu.box_ = std::move(box);
  mu.resolution_ = std::move(resolution);
  mu.density_ = std::move(density);
  return mu;
}

VectorMeasure VectorMeasure::zero(int dim_N, int dimE) {
  return atomic(dim_N, dimE, {});
}

double VectorMeasure::cell_volume() const {
  double v = 1;
  for (int a = 0; a < dim_N_; ++a) v *= box_.length(a) / resolution_[a];
  return v;
}

std::size_t VectorMeasure::cells() const {
  std::size_t t = 1;
  for (int n : resolution_) t *= n;
  return t;
}

RVec VectorMeasure::cell_center(std::size_t idx) const {
  RVec p(dim_N_);
  for (int a = dim_N_ - 1; a >= 0; --a) {
    int n = resolution_[a];
    int j = static_cast<int>(idx % n);
    idx /= n;
    p[a] = box_.lo[a] + (j + 0.5) * box_.length(a) / n;
  }
  return p;
}

VectorMeasure VectorMeasure::total_variation() const {
  if (kind_ == Kind::Atomic) {
    std::vector<Atom> tv;
    tv.reserve(atoms_.size());
    for (const auto& a : atoms_) {
      double m = 0;
      for (int c = 0; c < dimE_; ++c) m += a.weight[c].real() + a.weight[c].imag();
      tv.push_back({a.point, CVec::Constant(1, Complex(m, 0))});
    }
    return atomic(dim_N_, 1, std::move(tv));
  }
  CVec d = CVec::Zero(density_[0].size());
  for (const auto& comp : density_)
    for (Eigen::Index i = 0; i < comp.size(); ++i)
      d[i] += comp[i].real() + comp[i].imag();
  return gridded(box_, resolution_, {std::move(d)});
}

double VectorMeasure::total_mass() const {
  double m = 0;
  if (kind_ == Kind::Atomic) {
    for (const auto& a : atoms_)
      for (int c = 0; c < dimE_; ++c) m += a.weight[c].real() + a.weight[c].imag();
    return m;
  }
  for (const auto& comp : density_)
    for (Eigen::Index i = 0; i < comp.size(); ++i) m += comp[i].real() + comp[i].imag();
  return m * cell_volume();
}

CVec VectorMeasure::ball_mass(const RVec& x, double r) const {
  CVec out = CVec::Zero(dimE_);
  if (r <= 0) return out;
  if (kind_ == Kind::Atomic) {
    for (const auto& a : atoms_)
      if ((a.point - x).norm() < r) out += a.weight;
    return out;
  }
  const int N = dim_N_;
  double half_diag = 0;
  for (int a = 0; a < N; ++a) {
    double h = box_.length(a) / resolution_[a];
    half_diag += 0.25 * h * h;
  }
  half_diag = std::sqrt(half_diag);
  const double vol = cell_volume();
  const int sub = 3;
  int subpts = 1;
  for (int a = 0; a < N; ++a) subpts *= sub;
  for (std::size_t i = 0; i < cells(); ++i) {
    RVec c = cell_center(i);
    double d = (c - x).norm();
    double frac;
    if (d + half_diag < r) {
      frac = 1.0;
    } else if (d - half_diag >= r) {
      continue;
    } else {
      // boundary cell: 3^N subsample
      int inside = 0;
      std::vector<int> s(N, 0);
      for (int q = 0; q < subpts; ++q) {
        RVec p = c;
        int t = q;
        for (int a = 0; a < N; ++a) {
          int j = t % sub;
          t /= sub;
          double h = box_.length(a) / resolution_[a];
          p[a] += ((j - (sub - 1) / 2.0) / sub) * h;
        }
        if ((p - x).norm() < r) ++inside;
      }
      frac = static_cast<double>(inside) / subpts;
      if (frac == 0) continue;
    }
    for (int comp = 0; comp < dimE_; ++comp) out[comp] += density_[comp][i] * (vol * frac);
  }
  return out;
}

VectorMeasure VectorMeasure::scaled(double c) const {
  if (c < 0) throw std::invalid_argument("VectorMeasure::scaled: c must be >= 0");
  if (kind_ == Kind::Atomic) {
    auto a = atoms_;
    for (auto& at : a) at.weight *= c;
    return atomic(dim_N_, dimE_, std::move(a));
  }
  auto d = density_;
  for (auto& comp : d) comp *= c;
  return gridded(box_, resolution_, std::move(d));
}

double VectorMeasure::support_radius() const {
  double r = 0;
  if (kind_ == Kind::Atomic) {
    for (const auto& a : atoms_) r = std::max(r, a.point.norm());
    return r;
  }
  for (std::size_t i = 0; i < cells(); ++i) {
    bool nonzero = false;
    for (const auto& comp : density_)
      if (std::abs(comp[i]) > 0) nonzero = true;
    if (nonzero) r = std::max(r, cell_center(i).norm());
  }
  return r;
}

double VectorMeasure::resolution_scale() const {
  if (kind_ == Kind::Atomic) return 0.0;
  double d2 = 0;
  for (int a = 0; a < dim_N_; ++a) {
    double h = box_.length(a) / resolution_[a];
    d2 += h * h;
  }
  return 0.5 * std::sqrt(d2);
}

RadialMassProfile::RadialMassProfile(const VectorMeasure& mu, const RVec& center) {
  std::vector<std::pair<double, double>> pts;  // (dist, tv mass)
  if (mu.kind() == VectorMeasure::Kind::Atomic) {
    for (const auto& a : mu.atoms()) {
      double m = 0;
      for (int c = 0; c < mu.dimE(); ++c) m += a.weight[c].real() + a.weight[c].imag();
      if (m > 0) pts.emplace_back((a.point - center).norm(), m);
    }
  } else {
    const int N = mu.dim_N();
    const int sub = 3;
    int subpts = 1;
    for (int a = 0; a < N; ++a) subpts *= sub;
    const double vol = mu.cell_volume() / subpts;
    for (std::size_t i = 0; i < mu.cells(); ++i) {
      double dens = 0;
      for (const auto& comp : mu.density()) dens += comp[i].real() + comp[i].imag();
      if (dens <= 0) continue;
      RVec c = mu.cell_center(i);
      for (int q = 0; q < subpts; ++q) {
        RVec p = c;
        int t = q;
        for (int a = 0; a < N; ++a) {
          int j = t % sub;
          t /= sub;
          double h = mu.box().length(a) / mu.resolution()[a];
          p[a] += ((j - (sub - 1) / 2.0) / sub) * h;
        }
        pts.emplace_back((p - center).norm(), dens * vol);
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  dist_.resize(pts.size());
  prefix_.resize(pts.size());
  double acc = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    dist_[i] = pts[i].first;
    acc += pts[i].second;
    prefix_[i] = acc;
  }
  total_ = acc;
}

double RadialMassProfile::mass(double r) const {
  if (dist_.empty() || r <= 0) return 0;
  auto it = std::lower_bound(dist_.begin(), dist_.end(), r);
  if (it == dist_.begin()) return 0;
  return prefix_[static_cast<std::size_t>(it - dist_.begin()) - 1];
}

VectorMeasure power_law_measure(int N, double exponent, const Box& box,
                                const std::vector<int>& resolution, double scale) {
  std::size_t total = 1;
  for (int n : resolution) total *= n;
  CVec d = CVec::Zero(total);
  VectorMeasure probe = VectorMeasure::gridded(box, resolution, {d});  // for geometry
  double vol = probe.cell_volume();
  // equal-volume ball radius of a cell
  double rho = std::pow(N * vol / sphere_surface_area(N), 1.0 / N);
  for (std::size_t i = 0; i < total; ++i) {
    RVec c = probe.cell_center(i);
    double r = c.norm();
    double v;
    if (r < rho && exponent > -N) {
      // exact mean of |x|^e over the equal-volume ball
      v = (N / (N + exponent)) * std::pow(rho, exponent);
    } else {
      v = std::pow(r, exponent);
    }
    d[i] = Complex(scale * v, 0);
  }
  return VectorMeasure::gridded(box, resolution, {std::move(d)});
}

VectorMeasure line_measure(int N, double len, double spacing) {
  std::vector<VectorMeasure::Atom> atoms;
  int count = static_cast<int>(std::floor(2 * len / spacing));
  for (int k = 0; k <= count; ++k) {
    RVec p = RVec::Zero(N);
    p[0] = -len + k * spacing;
    atoms.push_back({p, CVec::Constant(1, Complex(spacing, 0))});
  }
  return VectorMeasure::atomic(N, 1, std::move(atoms));
}

VectorMeasure lebesgue_measure(const Box& box, const std::vector<int>& resolution) {
  std::size_t total = 1;
  for (int n : resolution) total *= n;
  return VectorMeasure::gridded(box, resolution, {CVec::Constant(total, Complex(1, 0))});
}

}  // namespace rieszlab
