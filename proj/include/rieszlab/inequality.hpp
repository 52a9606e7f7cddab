#pragma once

#include <functional>
#include <optional>
#include <string>

#include "rieszlab/certificate.hpp"
#include "rieszlab/ensemble.hpp"
#include "rieszlab/measure.hpp"
#include "rieszlab/regularity.hpp"
#include "rieszlab/solver.hpp"

namespace rieszlab {

/// Outcome of one inequality verification over a test ensemble.
/// predicted_constant = calibration_scalar * functional_bracket^{1/q}; a
/// member violates when LHS/RHS > predicted_constant * slack.
struct InequalityReport {
  std::string id;
  int ensemble_size = 0;
  std::uint64_t seed = 0;
  double empirical_best_constant = 0;  // max over ensemble of LHS/RHS
  double predicted_constant = 0;
  double calibration_scalar = 0;
  double functional_bracket = 0;
  double slack = 1.25;
  std::vector<int> violations;
  bool pass = false;
  bool hypotheses_met = true;
  std::string hypothesis_note;
  std::vector<double> trend;  // auxiliary recorded series (context-dependent)
};

using Weight = std::function<double(const RVec&)>;

struct HardyCondition {
  double C = 0;  // sup_R (int_{B_R^c} u~ dnu)^{1/q} sup_{B_R} v~^{-1}
  TrendFlag trend;
  double worst_R = 0;
};

/// The two-weight condition (finiteness of C decides the Hardy inequality).
/// The sup over B_R of 1/v~ is taken over the weight sample points.
HardyCondition hardy_condition(const Weight& u_weight, const Weight& v_weight,
                               const VectorMeasure& nu, double q,
                               const std::vector<double>& R_grid,
                               const std::vector<RVec>& weight_points);

/// Forward inequality: for nonnegative g,
/// (int (int_{B_{|x|/2}} g)^q u~ dnu)^{1/q} <= C int g v~ dx.
InequalityReport hardy_forward(const Weight& u_weight, const Weight& v_weight,
                               const VectorMeasure& nu, double q, const Box& g_box,
                               const std::vector<int>& g_resolution,
                               const EnsembleSpec& g_ensemble);

struct HardyWitness {
  double R = 0;
  double ratio = 0;
};

/// Converse construction: indicator test functions on the near-maximizing set
/// of 1/v~ inside B_R; returns the first witness with ratio > candidate_C.
std::optional<HardyWitness> hardy_converse(const Weight& u_weight, const Weight& v_weight,
                                           const VectorMeasure& nu, double q,
                                           double candidate_C, const Box& g_box,
                                           const std::vector<int>& g_resolution,
                                           const std::vector<double>& R_grid);

/// Projects a field onto ker L(D) modewise (orthogonal projection onto
/// ker L(xi) per nonzero mode; the zero mode is kept).
GridField project_onto_kernel(const HomogeneousOperator& L, const GridField& f);

/// Moment estimate for fields in the kernel of a cocanceling operator:
/// |int phi . f| <= C sum_{j=1..kappa} int |f| |y|^j |D^j phi| dy.
InequalityReport cocanceling_moment_check(const HomogeneousOperator& L, const GridField& f,
                                          const EnsembleSpec& phi_ensemble);

struct FundamentalLemmaOptions {
  double q = 1;
  double ell = 1;
  double slack = 1.25;
  double calibration = 0;  // 0 -> calibrate on the power-law example measure
  std::uint64_t calibration_seed = 0xC0FFEEULL;
  int calibration_count = 200;
};

/// (int |K * g|^q dnu)^{1/q} <= C~ ||g||_1 for g = A(D)u in ker of the
/// cocanceling annihilator; K is the reproducing kernel of op, so K * g = u.
/// Reports the J1/J2 split through the radial cutoff psi (1 on B_{1/4},
/// 0 outside B_{1/2}).
InequalityReport fundamental_lemma_check(const HomogeneousOperator& op,
                                         const VectorMeasure& nu,
                                         const FundamentalLemmaOptions& opt,
                                         const Box& box, const std::vector<int>& resolution,
                                         const EnsembleSpec& g_ensemble,
                                         std::vector<double>* J1_out = nullptr,
                                         std::vector<double>* J2_out = nullptr,
                                         std::vector<double>* LHS_out = nullptr);

/// |int u dmu| <= C ||A(D)u||_1 under ellipticity + canceling and the measure
/// growth/potential hypotheses at exponent N - m.
InequalityReport measure_duality_check(const HomogeneousOperator& op, const VectorMeasure& mu,
                                       const Box& box, const std::vector<int>& resolution,
                                       const EnsembleSpec& u_ensemble, double slack = 1.25,
                                       double calibration = 0);

/// Trace inequalities: derivative form int |D^{m-1}u|^q dnu (ell = 1, q = 1)
/// or the fractional form with |(-Delta)^{(m-ell)/2} u|, both against
/// ||A(D)u||_1.
InequalityReport trace_inequality_check(const HomogeneousOperator& op, const VectorMeasure& nu,
                                        double q, double ell, bool fractional_form,
                                        const Box& box, const std::vector<int>& resolution,
                                        const EnsembleSpec& u_ensemble, double slack = 1.25,
                                        double calibration = 0);

struct TrivialityReport {
  bool zero_measure = false;
  std::vector<double> lower_bounds;  // across growing truncation radii
  TrendFlag divergence;
  bool energy_divergent = false;  // cross-check via energy()
};

/// Divergence of the proof's lower bound
/// int_{B_{R'}} [ |mu|(B_R) / (|x|+R)^{N-m} ]^p dx for 1 <= p <= N/(N-m).
TrivialityReport triviality_check(const VectorMeasure& mu, double m, double p,
                                  const std::vector<double>& R_list);

struct NecessityReport {
  double C_N = 0;             // surface area x sum of coefficient norms
  double max_ratio = 0;       // sup |mu(B(x,r))| / (||f||_inf r^{N-1})
  bool positive_density = false;
  bool pass = false;          // max_ratio <= C_N
  std::vector<double> per_radius_max;  // max ratio per sampled radius (descending r)
  std::vector<double> radii;
};

/// First-order necessity: mu := A*(D)f by 4th-order central differences of f,
/// ball masses sampled in the interior of the grid.
NecessityReport first_order_necessity(const HomogeneousOperator& op, const GridField& f,
                                      int center_count = 64, int radii_count = 12,
                                      std::uint64_t seed = 11);

}  // namespace rieszlab
