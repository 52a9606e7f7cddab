#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "rieszlab/operator.hpp"

namespace rieszlab {

struct Box {
  RVec lo, hi;
  int dim() const { return static_cast<int>(lo.size()); }
  double length(int a) const { return hi[a] - lo[a]; }
  double volume() const {
    double v = 1;
    for (int a = 0; a < dim(); ++a) v *= length(a);
    return v;
  }
  static Box centered_cube(int N, double half_side) {
    Box b;
    b.lo = RVec::Constant(N, -half_side);
    b.hi = RVec::Constant(N, half_side);
    return b;
  }
};

/// Vector-valued samples on a uniform periodized grid over a box.
/// Sample j of axis a sits at lo[a] + (j + 1/2) * h[a] (cell centers).
class GridField {
 public:
  GridField() = default;
  GridField(Box box, std::vector<int> resolution, int value_dim, int padding_factor = 1);

  int dim_N() const { return box_.dim(); }
  int value_dim() const { return value_dim_; }
  const Box& box() const { return box_; }
  const std::vector<int>& resolution() const { return resolution_; }
  int padding_factor() const { return padding_factor_; }
  std::size_t total() const { return total_; }
  double cell_volume() const;
  double spacing(int a) const { return box_.length(a) / resolution_[a]; }

  CVec& comp(int c) { return comps_[c]; }
  const CVec& comp(int c) const { return comps_[c]; }

  /// Cell-center coordinate of flat index idx.
  RVec point(std::size_t idx) const;

  /// Flat index from per-axis indices.
  std::size_t flat(const std::vector<int>& idx) const;

  /// Angular frequency vector of flat index (torus lattice xi = 2 pi k / L).
  RVec frequency(std::size_t idx) const;

  /// Value at flat index as a value_dim vector.
  CVec value(std::size_t idx) const;

  /// Euclidean norm field |u(x)| as scalar samples.
  Eigen::VectorXd norm_field() const;

  double max_abs() const;
  double lp_norm(double p) const;  // box quadrature; p = inf -> max_abs
  CVec mean() const;
  void subtract_mean();

  /// Fill all components from a function of the cell-center point.
  void fill(const std::function<CVec(const RVec&)>& f);

 private:
  Box box_;
  std::vector<int> resolution_;
  int value_dim_ = 0;
  int padding_factor_ = 1;
  std::size_t total_ = 0;
  std::vector<CVec> comps_;
};

/// In-place c2c FFT over an N-d array flattened row-major (last axis fastest).
/// Forward uses e^{-i x xi}; inverse is normalized by 1/total.
void fft_forward(std::vector<int> dims, CVec& data);
void fft_inverse(std::vector<int> dims, CVec& data);

}  // namespace rieszlab
