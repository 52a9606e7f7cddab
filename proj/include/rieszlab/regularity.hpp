#pragma once

#include <vector>

#include "rieszlab/measure.hpp"

namespace rieszlab {

/// Monotone-growth evidence across decades of a controlling parameter.
/// Divergent means: values increasing across >= 3 decades with either ratio
/// >= 1.5 per decade or increments that do not decay (log-type growth).
struct TrendFlag {
  bool divergent = false;
  std::vector<double> values;  // one per decade of the controlling parameter
};

TrendFlag detect_divergence(std::vector<double> values, double abs_floor = 1e-12);

/// Log-spaced radii in [r_min, r_max].
std::vector<double> log_radii(double r_min, double r_max, int count);

struct RegularityReport {
  double lambda = 0;
  double ahlfors = 0;          // sup over sampled (x, r) of |mu|(B(x,r)) / r^lambda
  double origin_ahlfors = 0;   // centers restricted to x = 0
  double wolff_bracket = 0;    // [[mu]]_lambda
  TrendFlag ahlfors_trend;     // small-radius trend at the worst center
  TrendFlag origin_trend;
  TrendFlag wolff_trend;       // lower-cutoff trend at the worst y
  int center_count = 0;
  int radii_count = 0;
};

/// Lower bound of ||mu||_lambda over the sampled centers and radii.
/// Returns the sup and a small-radius divergence trend for the worst center.
double ahlfors_constant(const VectorMeasure& mu, double lambda,
                        const std::vector<RVec>& centers, const std::vector<double>& radii,
                        TrendFlag* trend = nullptr, RVec* witness = nullptr);

/// ||mu||_{0,lambda}: same supremum over balls centered at the origin.
double origin_ahlfors(const VectorMeasure& mu, double lambda,
                      const std::vector<double>& radii, TrendFlag* trend = nullptr);

/// [[mu]]_lambda = sup_y int_0^{|y|/2} |mu|(B(y,r)) / r^{lambda+1} dr,
/// log-trapezoid quadrature per y; divergence probed by shrinking the lower
/// cutoff of the quadrature a decade at a time.
double wolff_condition(const VectorMeasure& mu, double lambda,
                       const std::vector<RVec>& y_sample, int r_quadrature_points,
                       TrendFlag* trend = nullptr);

/// Truncated Wolff potential W^t_{alpha,p} nu(x) for a scalar measure.
double wolff_potential(const VectorMeasure& nu, double alpha, double p, double t,
                       const RVec& x, int quadrature_points = 200,
                       TrendFlag* trend = nullptr);

/// Default center sample for a measure: origin, atoms / a grid subsample, and
/// seeded random points in the support box.
std::vector<RVec> default_centers(const VectorMeasure& mu, int random_count = 32,
                                  std::uint64_t seed = 7);

/// Full report at one lambda with default sampling.
RegularityReport regularity_report(const VectorMeasure& mu, double lambda,
                                   int radii_count = 200, double r_min = 1e-3,
                                   double r_max = 1e3);

}  // namespace rieszlab
