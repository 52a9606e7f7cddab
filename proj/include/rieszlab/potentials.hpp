#pragma once

#include <optional>

#include "rieszlab/measure.hpp"
#include "rieszlab/regularity.hpp"
#include "rieszlab/spectral.hpp"

namespace rieszlab {

/// gamma(m) = pi^{N/2} 2^m Gamma(m/2) / Gamma((N-m)/2), the Riesz potential
/// normalization. Requires 0 < m < N.
double riesz_constant(int N, double m);

struct RieszValue {
  CVec value;
  bool singular = false;  // evaluation hit an atom; +inf semantics
};

/// I_m mu(x) for an atomic measure: exact finite sum.
RieszValue riesz_potential_atomic(const VectorMeasure& mu, double m, const RVec& x);

/// I_m mu(x) by direct summation over atoms or density cells. The kernel on a
/// cell closer than the cell scale is replaced by its exact average over the
/// equal-volume ball: mean of |z|^{m-N} over B_rho is (N/m) rho^{m-N}.
CVec riesz_potential_eval(const VectorMeasure& mu, double m, const RVec& x);

/// I_m mu on the measure's grid by zero-padded FFT convolution with the
/// tabulated kernel gamma(m)^{-1} |x|^{m-N} (same self-cell rule).
GridField riesz_potential_grid(const VectorMeasure& mu, double m, int padding_factor = 4);

struct EnergyReport {
  double m = 0, p = 0;
  std::vector<double> R_list;
  std::vector<double> truncated;  // int_{B_R} |I_m mu|^p dx per R
  TrendFlag divergent;            // ratio test across R_list
};

/// Truncated (m,p)-energies by radial-angular quadrature of |I_m mu|^p over
/// B_R, with I_m mu evaluated by direct summation.
EnergyReport energy(const VectorMeasure& mu, double m, double p,
                    const std::vector<double>& R_list, int angular = 64,
                    int radial_per_decade = 80);

struct WeakEnergyReport {
  double quasinorm = 0;  // sup_lambda lambda |{|I_m mu| > lambda}| over the grid
  std::vector<double> lambda_grid;
  std::vector<double> level_volumes;
  TrendFlag domain_trend;  // quasinorm across growing evaluation domains
};

/// Weak (m,1) quasinorm over B_{r_max}, cell counting on the radial-angular
/// sample; the domain trend repeats the sup over nested domains.
WeakEnergyReport weak_energy(const VectorMeasure& mu, double m, double r_max,
                             int lambda_count = 100, int angular = 64,
                             int radial_per_decade = 80);

struct RieszIdentityReport {
  double relative_residual = 0;     // after the single-constant fit
  Complex fitted_constant{0, 0};    // least-squares c in I_m mu = c sum a*_a R^a f
  double lhs_norm = 0, rhs_norm = 0;
};

/// Checks I_m mu = c sum_{|alpha|=m} a_alpha^* R^alpha f with mu := A*(D)f,
/// all sides computed spectrally on the torus grid of f.
RieszIdentityReport verify_riesz_identity(const HomogeneousOperator& op, const GridField& f);

}  // namespace rieszlab
