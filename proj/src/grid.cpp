#include "rieszlab/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace rieszlab {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}

GridField::GridField(Box box, std::vector<int> resolution, int value_dim, int padding_factor)
    : box_(std::move(box)),
      resolution_(std::move(resolution)),
      value_dim_(value_dim),
      padding_factor_(padding_factor) {
  if (static_cast<int>(resolution_.size()) != box_.dim())
    throw std::invalid_argument("GridField: resolution/box dimension mismatch");
  if (value_dim_ < 1) throw std::invalid_argument("GridField: value_dim must be positive");
  if (padding_factor_ < 1) throw std::invalid_argument("GridField: padding_factor must be >= 1");
  total_ = 1;
  for (int n : resolution_) {
    if (!power_of_two(n)) throw std::invalid_argument("GridField: resolution must be powers of two");
    total_ *= n;
  }
  comps_.assign(value_dim_, CVec::Zero(total_));
}

double GridField::cell_volume() const {
  double v = 1;
  for (int a = 0; a < dim_N(); ++a) v *= spacing(a);
  return v;
}

RVec GridField::point(std::size_t idx) const {
  int N = dim_N();
  RVec p(N);
  for (int a = N - 1; a >= 0; --a) {
    int n = resolution_[a];
    int j = static_cast<int>(idx % n);
    idx /= n;
    p[a] = box_.lo[a] + (j + 0.5) * spacing(a);
  }
  return p;
}

std::size_t GridField::flat(const std::vector<int>& idx) const {
  std::size_t f = 0;
  for (int a = 0; a < dim_N(); ++a) f = f * resolution_[a] + idx[a];
  return f;
}

RVec GridField::frequency(std::size_t idx) const {
  int N = dim_N();
  RVec xi(N);
  for (int a = N - 1; a >= 0; --a) {
    int n = resolution_[a];
    int j = static_cast<int>(idx % n);
    idx /= n;
    int k = (j <= n / 2) ? j : j - n;
    if (j == n / 2) k = -n / 2;  // Nyquist convention
    xi[a] = 2.0 * M_PI * k / box_.length(a);
  }
  return xi;
}

CVec GridField::value(std::size_t idx) const {
  CVec v(value_dim_);
  for (int c = 0; c < value_dim_; ++c) v[c] = comps_[c][idx];
  return v;
}

Eigen::VectorXd GridField::norm_field() const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(total_);
  for (int c = 0; c < value_dim_; ++c) out += comps_[c].cwiseAbs2().real();
  return out.cwiseSqrt();
}

double GridField::max_abs() const {
  double m = 0;
  auto nf = norm_field();
  for (Eigen::Index i = 0; i < nf.size(); ++i) m = std::max(m, nf[i]);
  return m;
}

double GridField::lp_norm(double p) const {
  if (std::isinf(p)) return max_abs();
  auto nf = norm_field();
  double s = 0;
  for (Eigen::Index i = 0; i < nf.size(); ++i) s += std::pow(nf[i], p);
  return std::pow(s * cell_volume(), 1.0 / p);
}

CVec GridField::mean() const {
  CVec m(value_dim_);
  for (int c = 0; c < value_dim_; ++c) m[c] = comps_[c].sum() / static_cast<double>(total_);
  return m;
}

void GridField::subtract_mean() {
  CVec m = mean();
  for (int c = 0; c < value_dim_; ++c) comps_[c].array() -= m[c];
}

void GridField::fill(const std::function<CVec(const RVec&)>& f) {
  for (std::size_t i = 0; i < total_; ++i) {
    CVec v = f(point(i));
    for (int c = 0; c < value_dim_; ++c) comps_[c][i] = v[c];
  }
}

namespace {
void run_fft(const std::vector<int>& dims, CVec& data, int sign) {
  std::size_t total = 1;
  for (int n : dims) total *= n;
  if (data.size() != static_cast<Eigen::Index>(total))
    throw std::invalid_argument("fft: data size mismatch");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, sign,
                                 FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}
}  // namespace

void fft_forward(std::vector<int> dims, CVec& data) { run_fft(dims, data, FFTW_FORWARD); }

void fft_inverse(std::vector<int> dims, CVec& data) {
  run_fft(dims, data, FFTW_BACKWARD);
  std::size_t total = 1;
  for (int n : dims) total *= n;
  data /= static_cast<double>(total);
}

}  // namespace rieszlab
