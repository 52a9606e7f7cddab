#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "rieszlab/operator.hpp"

namespace rieszlab {

/// Verdicts for the structural conditions of an operator symbol.
/// All verdicts are relative to the recorded finite sphere sample; no claim
/// of a symbolic proof is made.
struct StructureCertificate {
  // ellipticity section
  std::optional<bool> elliptic;
  double min_singular_value = 0.0;
  double max_singular_value = 0.0;
  RVec witness_xi;

  // canceling section: intersection over the sample of the ranges A(xi)[E]
  std::optional<bool> canceling;
  int intersection_dim = 0;
  std::vector<CVec> intersection_basis;

  int sample_size = 0;
  std::uint64_t sample_seed = 0;
  double tolerance = 0.0;
};

/// Verdict for the cocanceling condition on the kernels of L(xi).
struct CocancelingCertificate {
  bool cocanceling = false;
  int intersection_dim = 0;
  std::vector<CVec> intersection_basis;
  int sample_size = 0;
  std::uint64_t sample_seed = 0;
  double tolerance = 0.0;
};

/// Per-sample compatibility of an annihilator candidate L(D) for A(D).
struct AnnihilatorReport {
  bool containment_all = false;       // A(xi)[E] subseteq ker L(xi) at every sample
  double max_composition_norm = 0.0;  // max_xi ||L(xi) A(xi)|| / (||L|| ||A||)
  int failed_samples = 0;
  bool intersections_match = false;   // dim cap ker L(xi) == dim cap A(xi)[E]
  int ker_intersection_dim = 0;
  int range_intersection_dim = 0;
  int sample_size = 0;
};

/// Smallest/largest singular value sweep of A(xi) over the sphere sample.
/// tol <= 0 selects the scale-free default 1e-8 * (largest observed sigma).
StructureCertificate check_ellipticity(const HomogeneousOperator& op,
                                       int sphere_sample_count, double tol = 0.0);

/// Iterated intersection of the ranges A(xi)[E]; fills the canceling section
/// of `cert` (pass the ellipticity certificate to accumulate both).
StructureCertificate check_canceling(const HomogeneousOperator& op,
                                     int sphere_sample_count, double tol = 0.0,
                                     StructureCertificate cert = {});

/// Iterated intersection of the kernels of L(xi).
CocancelingCertificate check_cocanceling(const HomogeneousOperator& L,
                                         int sphere_sample_count, double tol = 0.0);

/// Checks L(xi) A(xi) = 0 per sample and compares the two global intersections.
AnnihilatorReport verify_annihilator(const HomogeneousOperator& A,
                                     const HomogeneousOperator& L,
                                     int sphere_sample_count, double tol = 1e-10);

/// Orthonormal basis of the range of M (columns), numerical rank cut at
/// rel_tol * leading singular value.
CMat range_basis(const CMat& M, double rel_tol);

/// Orthonormal basis of the kernel of M.
CMat kernel_basis(const CMat& M, double rel_tol);

/// Intersection of two subspaces given by orthonormal column bases, via
/// principal angles; keeps directions with cos(theta) >= 1 - angle_tol.
CMat subspace_intersection(const CMat& X, const CMat& Y, double angle_tol = 1e-8);

}  // namespace rieszlab
