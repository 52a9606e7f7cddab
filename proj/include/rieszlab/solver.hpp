#pragma once

#include <map>

#include "rieszlab/ensemble.hpp"
#include "rieszlab/measure.hpp"
#include "rieszlab/spectral.hpp"

namespace rieszlab {

/// H(xi) = (A*A)^{-1}(xi) A*(xi), the left inverse of the symbol (dE x dF).
/// Throws SolverError when (A*A)(xi) is numerically singular.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CMat multiplier_H(const HomogeneousOperator& op, const RVec& xi);

struct SolveResult {
  GridField f;                       // over F, on the measure grid
  CVec mean_adjustment;              // dimE vector removed from mu
  double spectral_residual = 0;      // ||A*(D)f - (mu - mean)||_2 / ||mu - mean||_2
  double weak_residual = -1;         // filled by weak_residual() when requested
  std::map<double, double> lp_norms; // p -> ||f||_p over the box (inf = max)
};

/// Constructive solve of A*(D)f = mu on the measure's torus grid:
/// f^(xi) = i^m A(xi) (A*A)^{-1}(xi) mu^(xi) per nonzero mode; the zero mode
/// of mu is subtracted and reported (constants lie in ker A*(D) on the torus).
SolveResult solve_measure(const HomogeneousOperator& op, const VectorMeasure& mu,
                          const std::vector<double>& p_list);

/// max over the ensemble of |int conj(A(D)u) . f dx - int conj(u) . dmu| /
/// (||A(D)u||_1 + ||u||_1); the test fields u live over E on the grid of f.
double weak_residual(const HomogeneousOperator& op, const GridField& f,
                     const VectorMeasure& mu, const EnsembleSpec& ensemble);

struct KernelProfile {
  int dim_N = 0;
  int resolution = 0;       // lattice points per axis
  double box_half_side = 0; // table covers [-S, S)^N at spacing 2S/resolution
  double homogeneity_exponent_fit = 0;  // expect m - N for elliptic op
  double bound_constant_ka = 0;         // sup ||K(x)|| |x|^{N-m} over the annulus
  double bound_constant_kb = 0;         // sup ||grad K(x)|| |x|^{N-m+1}
  // tabulated kernel, one array per matrix entry, row-major K(x)_{e,f};
  // index j along an axis is the lattice point at x = j*h wrapped to (-S, S]
  std::vector<CVec> table;
  int dimE = 0, dimF = 0;
};

/// Inverse Fourier transform of H on a centered lattice (free-space kernel up
/// to periodization), with a least-squares homogeneity fit of the radial
/// increment profile over the mid-range annulus.
KernelProfile kernel_K(const HomogeneousOperator& op, int resolution, double box_half_side);

/// K(x) read from the table by nearest-cell lookup, as a dimE x dimF matrix.
CMat kernel_at(const KernelProfile& prof, const RVec& x);

struct ReproduceReport {
  double spectral_error = 0;    // relative L2, multiplier route
  double realspace_error = 0;   // relative L2, tabulated-kernel convolution route
  double domination_margin = 0; // max over samples of |u| - I_m|A(D)u| (<= tol)
  CVec removed_mean;
};

/// Checks u = K * (A(D)u) by the exact multiplier route and by zero-padded
/// convolution with the tabulated kernel, plus |u(x)| <= I_m |A(D)u|(x).
ReproduceReport reproduce_u(const HomogeneousOperator& op, const GridField& u,
                            int padding_factor = 4);

}  // namespace rieszlab
