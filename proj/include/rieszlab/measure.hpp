#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rieszlab/grid.hpp"

namespace rieszlab {

/// E*-valued positive measure: each component mu_l = mu_l^Re + i mu_l^Im with
/// both parts nonnegative. Atomic (points + weights) or a gridded density on
/// a bounded box; all functionals treat the measure as zero outside the box.
class VectorMeasure {
 public:
  enum class Kind { Atomic, Gridded };

  struct Atom {
    RVec point;
    CVec weight;  // componentwise Re, Im >= 0
  };

  static VectorMeasure atomic(int dim_N, int dimE, std::vector<Atom> atoms);
  /// density[c][cell] is the value of d(mu_c)/dx at the cell center.
  static VectorMeasure gridded(Box box, std::vector<int> resolution,
                               std::vector<CVec> density);
  static VectorMeasure zero(int dim_N, int dimE);

  Kind kind() const { return kind_; }
  int dim_N() const { return dim_N_; }
  int dimE() const { return dimE_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Box& box() const { return box_; }
  const std::vector<int>& resolution() const { return resolution_; }
  const std::vector<CVec>& density() const { return density_; }
  double cell_volume() const;
  std::size_t cells() const;
  RVec cell_center(std::size_t idx) const;

  /// Scalar total-variation measure |mu| = sum_l (mu_l^Re + mu_l^Im), dimE=1.
  VectorMeasure total_variation() const;

  /// Total mass of |mu|.
  double total_mass() const;

  /// mu(B(x,r)) componentwise. Atomic: exact atom sum. Gridded: cell masses
  /// with boundary cells resolved by 3^N subsampling.
  CVec ball_mass(const RVec& x, double r) const;

  VectorMeasure scaled(double c) const;

  /// Radius of the smallest origin-centered ball containing the support.
  double support_radius() const;

  /// Smallest radius at which ball masses are meaningful: 0 for atomic
  /// measures, half the cell diagonal for gridded ones (below that the
  /// discretization is indistinguishable from point masses).
  double resolution_scale() const;

 private:
  Kind kind_ = Kind::Atomic;
  int dim_N_ = 0, dimE_ = 0;
  std::vector<Atom> atoms_;
  Box box_;
  std::vector<int> resolution_;
  std::vector<CVec> density_;
};

/// Point masses with total-variation weights and distances precomputed for one
/// center; ball masses for many radii via a sorted prefix sum.
class RadialMassProfile {
 public:
  RadialMassProfile(const VectorMeasure& mu, const RVec& center);
  /// |mu|(B(center, r)).
  double mass(double r) const;
  double total() const { return total_; }

 private:
  std::vector<double> dist_;    // sorted
  std::vector<double> prefix_;  // prefix_[i] = mass within dist_[i]
  double total_ = 0;
};

/// Gridded density nu = c |x|^e dx on a box; the cell containing the origin is
/// averaged over the equal-volume ball so the singular cell carries its exact
/// radial integral.
VectorMeasure power_law_measure(int N, double exponent, const Box& box,
                                const std::vector<int>& resolution, double scale = 1.0);

/// Atomic approximation of the 1-dimensional Hausdorff measure on the x1-axis
/// segment [-len, len]: atoms at spacing `spacing`, each of weight `spacing`.
VectorMeasure line_measure(int N, double len, double spacing);

/// Gridded Lebesgue measure on the box.
VectorMeasure lebesgue_measure(const Box& box, const std::vector<int>& resolution);

}  // namespace rieszlab
