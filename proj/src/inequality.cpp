#include "rieszlab/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rieszlab/potentials.hpp"
#include "rieszlab/sphere.hpp"
#include "rieszlab/spectral.hpp"

namespace rieszlab {

namespace {

struct PointMass {
  RVec x;
  double w;  // total-variation weight
};

std::vector<PointMass> support_points(const VectorMeasure& nu) {
  VectorMeasure tv = nu.total_variation();
  std::vector<PointMass> pts;
  if (tv.kind() == VectorMeasure::Kind::Atomic) {
    pts.reserve(tv.atoms().size());
    for (const auto& a : tv.atoms()) pts.push_back({a.point, a.weight[0].real()});
  } else {
    double vol = tv.cell_volume();
    pts.reserve(tv.cells());
    for (std::size_t i = 0; i < tv.cells(); ++i) {
      double w = tv.density()[0][i].real() * vol;
      if (w > 0) pts.push_back({tv.cell_center(i), w});
    }
  }
  return pts;
}

struct WeightedSupport {
  std::vector<RVec> x;
  std::vector<CVec> w;  // full complex componentwise weights
};

WeightedSupport complex_support(const VectorMeasure& mu) {
  WeightedSupport s;
  if (mu.kind() == VectorMeasure::Kind::Atomic) {
    for (const auto& a : mu.atoms()) {
      s.x.push_back(a.point);
      s.w.push_back(a.weight);
    }
  } else {
    double vol = mu.cell_volume();
    for (std::size_t i = 0; i < mu.cells(); ++i) {
      CVec w(mu.dimE());
      bool nonzero = false;
      for (int c = 0; c < mu.dimE(); ++c) {
        w[c] = mu.density()[c][i] * vol;
        if (std::abs(w[c]) > 0) nonzero = true;
      }
      if (!nonzero) continue;
      s.x.push_back(mu.cell_center(i));
      s.w.push_back(w);
    }
  }
  return s;
}

CVec field_at(const GridField& u, const RVec& x) {
  int N = u.dim_N();
  std::vector<int> j(N);
  for (int a = 0; a < N; ++a) {
    double t = (x[a] - u.box().lo[a]) / u.spacing(a) - 0.5;
    int ja = static_cast<int>(std::lround(t));
    j[a] = std::clamp(ja, 0, u.resolution()[a] - 1);
  }
  return u.value(u.flat(j));
}

// values at log-spaced parameters -> per-decade maxima, ordered so that the
// suspected blow-up end comes last
std::vector<double> decade_maxima(const std::vector<double>& param,
                                  const std::vector<double>& val, bool small_end_last) {
  std::map<int, double> bins;
  for (std::size_t i = 0; i < param.size(); ++i) {
    if (!(param[i] > 0) || !std::isfinite(val[i])) continue;
    int d = static_cast<int>(std::floor(std::log10(param[i])));
    auto it = bins.find(d);
    if (it == bins.end())
      bins[d] = val[i];
    else
      it->second = std::max(it->second, val[i]);
  }
  std::vector<double> out;
  for (const auto& [d, v] : bins) out.push_back(v);
  if (small_end_last) std::reverse(out.begin(), out.end());
  return out;
}

// shared hypothesis + bracket evaluation at exponent lambda
struct BracketInfo {
  double origin = 0, wolff = 0, bracket = 0;
  bool finite = true;
  TrendFlag origin_trend, wolff_trend;
};

BracketInfo measure_bracket(const VectorMeasure& nu, double lambda) {
  BracketInfo b;
  RegularityReport rep = regularity_report(nu, lambda);
  b.origin = rep.origin_ahlfors;
  b.wolff = rep.wolff_bracket;
  b.origin_trend = rep.origin_trend;
  b.wolff_trend = rep.wolff_trend;
  b.bracket = b.origin + b.wolff;
  b.finite = std::isfinite(b.bracket) && !rep.origin_trend.divergent &&
             !rep.wolff_trend.divergent;
  return b;
}

double power_mean(double s, double q) { return std::pow(s, 1.0 / q); }

// generic calibrated ensemble check: ratio_fn(nu, member index, spec) must
// return LHS/RHS for one member against the given measure
InequalityReport calibrated_check(
    const std::string& id, double q, double lambda, int dim_N, const Box& box,
    const std::vector<int>& resolution, const VectorMeasure& nu,
    const EnsembleSpec& ensemble, double slack, double calibration,
    const std::function<double(const VectorMeasure&, int, const EnsembleSpec&)>& ratio_fn,
    bool hypotheses_met_extra = true, const std::string& extra_note = "") {
  InequalityReport rep;
  rep.id = id;
  rep.seed = ensemble.seed;
  rep.ensemble_size = ensemble.count;
  rep.slack = slack;

  BracketInfo b = measure_bracket(nu, lambda);
  rep.functional_bracket = b.bracket;
  rep.hypotheses_met = b.finite && hypotheses_met_extra;
  rep.trend = b.wolff_trend.values;
  if (!b.finite) rep.hypothesis_note = "measure functionals not finite/stable at the required exponent";
  if (!hypotheses_met_extra) rep.hypothesis_note = extra_note;

  if (calibration <= 0) {
    VectorMeasure nu_cal = power_law_measure(dim_N, lambda - dim_N, box, resolution);
    BracketInfo bc = measure_bracket(nu_cal, lambda);
    EnsembleSpec cal = ensemble;
    cal.seed = 0xC0FFEEULL;
    cal.count = std::min(ensemble.count, 200);
    double worst = 0;
    for (int i = 0; i < cal.count; ++i)
      worst = std::max(worst, ratio_fn(nu_cal, i, cal));
    calibration = 1.05 * worst / power_mean(bc.bracket, q);
  }
  rep.calibration_scalar = calibration;
  rep.predicted_constant = calibration * power_mean(b.bracket, q);

  for (int i = 0; i < ensemble.count; ++i) {
    double r = ratio_fn(nu, i, ensemble);
    rep.empirical_best_constant = std::max(rep.empirical_best_constant, r);
    if (rep.hypotheses_met && r > rep.predicted_constant * rep.slack)
      rep.violations.push_back(i);
  }
  rep.pass = rep.hypotheses_met && rep.violations.empty();
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// two-weight Hardy machinery
// ---------------------------------------------------------------------------

namespace {

// sorted-radius prefix structures shared by the Hardy routines
struct RadialTail {
  std::vector<double> r;       // sorted
  std::vector<double> suffix;  // suffix[i] = sum of weights with radius >= r[i]
  double at(double R) const {  // integral over |x| >= R
    auto it = std::lower_bound(r.begin(), r.end(), R);
    if (it == r.end()) return 0;
    return suffix[static_cast<std::size_t>(it - r.begin())];
  }
};

RadialTail weighted_tail(const std::vector<PointMass>& pts, const Weight& w) {
  std::vector<std::pair<double, double>> rw;
  rw.reserve(pts.size());
  for (const auto& p : pts) rw.push_back({p.x.norm(), w(p.x) * p.w});
  std::sort(rw.begin(), rw.end());
  RadialTail t;
  t.r.resize(rw.size());
  t.suffix.assign(rw.size(), 0);
  double acc = 0;
  for (std::size_t i = rw.size(); i-- > 0;) {
    acc += rw[i].second;
    t.r[i] = rw[i].first;
    t.suffix[i] = acc;
  }
  return t;
}

struct RadialSupMax {
  std::vector<double> r;       // sorted
  std::vector<double> prefix;  // prefix[i] = max of values with radius <= r[i]
  double below(double R) const {  // sup over |x| < R
    auto it = std::lower_bound(r.begin(), r.end(), R);
    if (it == r.begin()) return 0;
    return prefix[static_cast<std::size_t>(it - r.begin()) - 1];
  }
};

RadialSupMax inv_weight_sup(const std::vector<RVec>& points, const Weight& v) {
  std::vector<std::pair<double, double>> rw;
  rw.reserve(points.size());
  for (const auto& x : points) {
    double vx = v(x);
    rw.push_back({x.norm(), vx > 0 ? 1.0 / vx : std::numeric_limits<double>::infinity()});
  }
  std::sort(rw.begin(), rw.end());
  RadialSupMax s;
  s.r.resize(rw.size());
  s.prefix.resize(rw.size());
  double acc = 0;
  for (std::size_t i = 0; i < rw.size(); ++i) {
    acc = std::max(acc, rw[i].second);
    s.r[i] = rw[i].first;
    s.prefix[i] = acc;
  }
  return s;
}

// cell geometry of the test-function grid, with prefix mass in radial order
struct GCells {
  std::vector<RVec> centers;
  std::vector<std::size_t> by_radius;  // cell indices sorted by |center|
  std::vector<double> radius_sorted;
  double vol = 0;
};

GCells g_cells(const Box& box, const std::vector<int>& resolution) {
  GridField probe(box, resolution, 1);
  GCells g;
  g.vol = probe.cell_volume();
  g.centers.resize(probe.total());
  for (std::size_t i = 0; i < probe.total(); ++i) g.centers[i] = probe.point(i);
  g.by_radius.resize(probe.total());
  for (std::size_t i = 0; i < probe.total(); ++i) g.by_radius[i] = i;
  std::sort(g.by_radius.begin(), g.by_radius.end(), [&](std::size_t a, std::size_t b) {
    return g.centers[a].norm() < g.centers[b].norm();
  });
  g.radius_sorted.resize(probe.total());
  for (std::size_t i = 0; i < probe.total(); ++i)
    g.radius_sorted[i] = g.centers[g.by_radius[i]].norm();
  return g;
}

// ratio LHS/RHS of the Hardy inequality for one nonnegative g given as cell
// values; prefix[i] = cumulative g-mass over the first i+1 cells in radial order
double hardy_ratio(const GCells& gc, const std::vector<double>& gvals,
                   const std::vector<PointMass>& nu_pts, const Weight& u_w,
                   const Weight& v_w, double q) {
  std::vector<double> prefix(gc.by_radius.size());
  double acc = 0;
  for (std::size_t i = 0; i < gc.by_radius.size(); ++i) {
    acc += gvals[gc.by_radius[i]] * gc.vol;
    prefix[i] = acc;
  }
  auto G = [&](double s) -> double {
    auto it = std::upper_bound(gc.radius_sorted.begin(), gc.radius_sorted.end(), s);
    if (it == gc.radius_sorted.begin()) return 0;
    return prefix[static_cast<std::size_t>(it - gc.radius_sorted.begin()) - 1];
  };
  double lhs_q = 0;
  for (const auto& p : nu_pts) {
    double Gp = G(0.5 * p.x.norm());
    if (Gp > 0) lhs_q += std::pow(Gp, q) * u_w(p.x) * p.w;
  }
  double rhs = 0;
  for (std::size_t i = 0; i < gvals.size(); ++i)
    rhs += gvals[i] * v_w(gc.centers[i]) * gc.vol;
  if (rhs <= 0) return 0;
  return power_mean(lhs_q, q) / rhs;
}

}  // namespace

HardyCondition hardy_condition(const Weight& u_weight, const Weight& v_weight,
                               const VectorMeasure& nu, double q,
                               const std::vector<double>& R_grid,
                               const std::vector<RVec>& weight_points) {
  RadialTail tail = weighted_tail(support_points(nu), u_weight);
  RadialSupMax vsup = inv_weight_sup(weight_points, v_weight);
  HardyCondition out;
  std::vector<double> cvals;
  cvals.reserve(R_grid.size());
  for (double R : R_grid) {
    double c = power_mean(tail.at(R), q) * vsup.below(R);
    cvals.push_back(c);
    if (c > out.C) {
      out.C = c;
      out.worst_R = R;
    }
  }
  TrendFlag small = detect_divergence(decade_maxima(R_grid, cvals, true));
  TrendFlag large = detect_divergence(decade_maxima(R_grid, cvals, false));
  out.trend = small.divergent ? small : large;
  out.trend.divergent = small.divergent || large.divergent;
  return out;
}

namespace {

std::vector<double> default_R_grid(const std::vector<PointMass>& nu_pts, const GCells& gc) {
  double r_lo = std::numeric_limits<double>::infinity(), r_hi = 0;
  for (double r : gc.radius_sorted) {
    if (r > 0) r_lo = std::min(r_lo, r);
    r_hi = std::max(r_hi, r);
  }
  for (const auto& p : nu_pts) r_hi = std::max(r_hi, p.x.norm());
  if (!std::isfinite(r_lo) || r_lo <= 0) r_lo = 1e-3;
  r_lo *= 0.5;
  r_hi *= 4.0;
  int count = std::max(8, static_cast<int>(std::ceil(10 * std::log10(r_hi / r_lo))));
  return log_radii(r_lo, r_hi, count);
}

std::vector<RVec> hardy_weight_points(const std::vector<PointMass>& nu_pts, const GCells& gc) {
  std::vector<RVec> pts = gc.centers;
  for (const auto& p : nu_pts) pts.push_back(p.x);
  return pts;
}

}  // namespace

InequalityReport hardy_forward(const Weight& u_weight, const Weight& v_weight,
                               const VectorMeasure& nu, double q, const Box& g_box,
                               const std::vector<int>& g_resolution,
                               const EnsembleSpec& g_ensemble) {
  InequalityReport rep;
  rep.id = "hardy-forward";
  rep.seed = g_ensemble.seed;
  rep.ensemble_size = g_ensemble.count;

  std::vector<PointMass> nu_pts = support_points(nu);
  GCells gc = g_cells(g_box, g_resolution);
  HardyCondition cond = hardy_condition(u_weight, v_weight, nu, q,
                                        default_R_grid(nu_pts, gc),
                                        hardy_weight_points(nu_pts, gc));
  rep.functional_bracket = cond.C;
  rep.calibration_scalar = 1.0;
  rep.predicted_constant = cond.C;
  rep.hypotheses_met = std::isfinite(cond.C) && !cond.trend.divergent;
  if (!rep.hypotheses_met) rep.hypothesis_note = "two-weight condition constant not finite/stable";
  rep.trend = cond.trend.values;
  // discretization headroom; for q > 1 the sharp constant also carries the
  // classical q^{1/q} q'^{1/q'} factor over the condition constant
  double qp = q > 1 ? q / (q - 1) : std::numeric_limits<double>::infinity();
  double hardy_factor = q > 1 ? std::pow(q, 1.0 / q) * std::pow(qp, 1.0 / qp) : 1.0;
  rep.slack = 1.1 * hardy_factor;

  for (int i = 0; i < g_ensemble.count; ++i) {
    GridField m = ensemble_member(g_box, g_resolution, 1, g_ensemble, i);
    Eigen::VectorXd gv = m.norm_field();
    std::vector<double> gvals(gv.data(), gv.data() + gv.size());
    double r = hardy_ratio(gc, gvals, nu_pts, u_weight, v_weight, q);
    rep.empirical_best_constant = std::max(rep.empirical_best_constant, r);
    if (rep.hypotheses_met && r > rep.predicted_constant * rep.slack)
      rep.violations.push_back(i);
  }
  rep.pass = rep.hypotheses_met && rep.violations.empty();
  return rep;
}

std::optional<HardyWitness> hardy_converse(const Weight& u_weight, const Weight& v_weight,
                                           const VectorMeasure& nu, double q,
                                           double candidate_C, const Box& g_box,
                                           const std::vector<int>& g_resolution,
                                           const std::vector<double>& R_grid) {
  std::vector<PointMass> nu_pts = support_points(nu);
  GCells gc = g_cells(g_box, g_resolution);
  for (double R : R_grid) {
    // near-maximizing set of 1/v~ inside B_R
    double S = 0;
    for (const auto& x : gc.centers)
      if (x.norm() < R) {
        double v = v_weight(x);
        if (v > 0) S = std::max(S, 1.0 / v);
      }
    if (S <= 0) continue;
    std::vector<double> gvals(gc.centers.size(), 0.0);
    bool any = false;
    for (std::size_t i = 0; i < gc.centers.size(); ++i) {
      if (gc.centers[i].norm() >= R) continue;
      double v = v_weight(gc.centers[i]);
      if (v > 0 && 1.0 / v >= 0.5 * S) {
        gvals[i] = 1.0;
        any = true;
      }
    }
    if (!any) continue;
    double ratio = hardy_ratio(gc, gvals, nu_pts, u_weight, v_weight, q);
    if (ratio > candidate_C) return HardyWitness{R, ratio};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// cocanceling moment estimate
// ---------------------------------------------------------------------------

GridField project_onto_kernel(const HomogeneousOperator& L, const GridField& f) {
  int dimF = L.dimE();  // L maps the value space of f into V
  return apply_multiplier(
      f, dimF,
      [&](const RVec& xi) -> CMat {
        if (xi.norm() == 0) return CMat::Identity(dimF, dimF);
        CMat V = kernel_basis(L.symbol_at(xi), 1e-10);
        if (V.cols() == 0) return CMat::Zero(dimF, dimF);
        return CMat(V * V.adjoint());
      },
      false);
}

InequalityReport cocanceling_moment_check(const HomogeneousOperator& L, const GridField& f,
                                          const EnsembleSpec& phi_ensemble) {
  InequalityReport rep;
  rep.id = "cocanceling-moment";
  rep.seed = phi_ensemble.seed;
  rep.ensemble_size = phi_ensemble.count;
  rep.slack = 1.25;

  int kappa = L.order_m();
  double vol = f.cell_volume();
  // kernel membership of f
  GridField Lf = apply_operator(L, f);
  double fmass = f.lp_norm(1);
  rep.hypotheses_met = fmass > 0 && Lf.lp_norm(1) <= 1e-8 * fmass;
  if (!rep.hypotheses_met) rep.hypothesis_note = "f is not (numerically) in the kernel of L(D)";

  Eigen::VectorXd fnorm = f.norm_field();

  auto ratio_for = [&](const EnsembleSpec& spec, int index) -> double {
    GridField phi = ensemble_member(f.box(), f.resolution(), f.value_dim(), spec, index);
    Complex lhs_c = 0;
    for (int c = 0; c < f.value_dim(); ++c)
      lhs_c += (phi.comp(c).array() * f.comp(c).array()).sum() * vol;
    double lhs = std::abs(lhs_c);
    double rhs = 0;
    for (int j = 1; j <= kappa; ++j) {
      GridField dj = derivative_tuple(phi, j);
      Eigen::VectorXd djn = dj.norm_field();
      for (std::size_t i = 0; i < f.total(); ++i)
        rhs += fnorm[i] * std::pow(f.point(i).norm(), j) * djn[i] * vol;
    }
    if (rhs <= 0) return 0;
    return lhs / rhs;
  };

  // calibration on a fixed-seed ensemble, then the test ensemble must stay
  // within the slack factor of the frozen constant
  EnsembleSpec cal = phi_ensemble;
  cal.seed = 0xC0FFEEULL;
  cal.count = std::min(phi_ensemble.count, 100);
  double worst = 0;
  for (int i = 0; i < cal.count; ++i) worst = std::max(worst, ratio_for(cal, i));
  rep.calibration_scalar = 1.05 * worst;
  rep.functional_bracket = 1.0;
  rep.predicted_constant = rep.calibration_scalar;

  for (int i = 0; i < phi_ensemble.count; ++i) {
    double r = ratio_for(phi_ensemble, i);
    rep.empirical_best_constant = std::max(rep.empirical_best_constant, r);
    if (rep.hypotheses_met && r > rep.predicted_constant * rep.slack)
      rep.violations.push_back(i);
  }
  rep.pass = rep.hypotheses_met && rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// fundamental potential-bound lemma with the J1/J2 split
// ---------------------------------------------------------------------------

namespace {

// radial profile G_psi(s) = int psi(y/s) g(y) dy on a log grid, per component
struct PsiProfile {
  std::vector<double> s;  // log-spaced
  std::vector<CVec> G;    // G[k] is a dimF vector at scale s[k]
  CVec at(double sv) const {
    if (s.empty()) return CVec();
    if (sv <= s.front()) return CVec::Zero(G.front().size());
    if (sv >= s.back()) return G.back();
    auto it = std::upper_bound(s.begin(), s.end(), sv);
    std::size_t k = static_cast<std::size_t>(it - s.begin());
    double t = std::log(sv / s[k - 1]) / std::log(s[k] / s[k - 1]);
    return CVec((1 - t) * G[k - 1] + t * G[k]);
  }
};

PsiProfile psi_profile(const GridField& g, double s_min, double s_max, int count) {
  PsiProfile p;
  p.s = log_radii(s_min, s_max, count);
  double vol = g.cell_volume();
  std::vector<double> rad(g.total());
  for (std::size_t i = 0; i < g.total(); ++i) rad[i] = g.point(i).norm();
  for (double sv : p.s) {
    CVec G = CVec::Zero(g.value_dim());
    for (std::size_t i = 0; i < g.total(); ++i) {
      // psi = 1 on B_{s/4}, 0 outside B_{s/2}
      double w = radial_cutoff(rad[i], 0.25 * sv, 0.5 * sv);
      if (w <= 0) continue;
      for (int c = 0; c < g.value_dim(); ++c) G[c] += w * g.comp(c)[i] * vol;
    }
    p.G.push_back(G);
  }
  return p;
}

}  // namespace

InequalityReport fundamental_lemma_check(const HomogeneousOperator& op,
                                         const VectorMeasure& nu,
                                         const FundamentalLemmaOptions& opt,
                                         const Box& box, const std::vector<int>& resolution,
                                         const EnsembleSpec& g_ensemble,
                                         std::vector<double>* J1_out,
                                         std::vector<double>* J2_out,
                                         std::vector<double>* LHS_out) {
  double lambda = (op.dim_N() - opt.ell) * opt.q;
  double S = 0.5 * box.length(0);
  int kres = std::min(256, 2 * resolution[0]);
  KernelProfile prof = kernel_K(op, kres, S);

  double h = box.length(0) / resolution[0];
  double diag = 0;
  for (int a = 0; a < box.dim(); ++a) diag += box.length(a) * box.length(a);
  diag = std::sqrt(diag);

  auto member_terms = [&](const VectorMeasure& m, int index, const EnsembleSpec& spec,
                          double* J1, double* J2) -> double {
    std::vector<PointMass> pts = support_points(m);
    GridField u = ensemble_member(box, resolution, op.dimE(), spec, index);
    GridField g = apply_operator(op, u);
    CVec mean = u.mean();
    double rhs = g.lp_norm(1);
    if (rhs <= 0) return 0;
    PsiProfile psi = psi_profile(g, 2 * h, diag, 60);
    double lhs_q = 0, j1_q = 0, j2_q = 0;
    for (const auto& p : pts) {
      CVec uval = field_at(u, p.x) - mean;
      CMat K = kernel_at(prof, p.x);
      CVec far = K * psi.at(p.x.norm());
      double a = uval.norm();
      double j1 = far.norm();
      double j2 = (uval - far).norm();
      lhs_q += std::pow(a, opt.q) * p.w;
      j1_q += std::pow(j1, opt.q) * p.w;
      j2_q += std::pow(j2, opt.q) * p.w;
    }
    if (J1) *J1 = power_mean(j1_q, opt.q) / rhs;
    if (J2) *J2 = power_mean(j2_q, opt.q) / rhs;
    return power_mean(lhs_q, opt.q) / rhs;
  };

  InequalityReport rep;
  rep.id = "fundamental-lemma";
  rep.seed = g_ensemble.seed;
  rep.ensemble_size = g_ensemble.count;
  rep.slack = opt.slack;

  BracketInfo b = measure_bracket(nu, lambda);
  rep.functional_bracket = b.bracket;
  rep.hypotheses_met = b.finite;
  rep.trend = b.wolff_trend.values;
  if (!b.finite)
    rep.hypothesis_note = "measure growth/potential hypotheses fail at the required exponent";

  double calibration = opt.calibration;
  if (calibration <= 0) {
    VectorMeasure nu_cal = power_law_measure(op.dim_N(), lambda - op.dim_N(), box, resolution);
    BracketInfo bc = measure_bracket(nu_cal, lambda);
    EnsembleSpec cal = g_ensemble;
    cal.seed = opt.calibration_seed;
    cal.count = std::min(g_ensemble.count, opt.calibration_count);
    double worst = 0;
    for (int i = 0; i < cal.count; ++i)
      worst = std::max(worst, member_terms(nu_cal, i, cal, nullptr, nullptr));
    calibration = 1.05 * worst / power_mean(bc.bracket, opt.q);
  }
  rep.calibration_scalar = calibration;
  rep.predicted_constant = calibration * power_mean(b.bracket, opt.q);

  for (int i = 0; i < g_ensemble.count; ++i) {
    double j1 = 0, j2 = 0;
    double r = member_terms(nu, i, g_ensemble, &j1, &j2);
    if (J1_out) J1_out->push_back(j1);
    if (J2_out) J2_out->push_back(j2);
    if (LHS_out) LHS_out->push_back(r);
    rep.empirical_best_constant = std::max(rep.empirical_best_constant, r);
    if (rep.hypotheses_met && r > rep.predicted_constant * rep.slack)
      rep.violations.push_back(i);
  }
  rep.pass = rep.hypotheses_met && rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// duality and trace inequalities
// ---------------------------------------------------------------------------

InequalityReport measure_duality_check(const HomogeneousOperator& op, const VectorMeasure& mu,
                                       const Box& box, const std::vector<int>& resolution,
                                       const EnsembleSpec& u_ensemble, double slack,
                                       double calibration) {
  StructureCertificate cert = check_canceling(op, 192, 0.0, check_ellipticity(op, 192));
  bool structural = cert.elliptic.value_or(false) && cert.canceling.value_or(false);

  auto ratio_fn = [&](const VectorMeasure& m, int index, const EnsembleSpec& spec) -> double {
    WeightedSupport ws = complex_support(m);
    GridField u = ensemble_member(box, resolution, op.dimE(), spec, index);
    Complex lhs_c = 0;
    for (std::size_t k = 0; k < ws.x.size(); ++k) {
      CVec uval = field_at(u, ws.x[k]);
      for (int c = 0; c < m.dimE(); ++c) lhs_c += uval[c] * ws.w[k][c];
    }
    double rhs = apply_operator(op, u).lp_norm(1);
    if (rhs <= 0) return 0;
    return std::abs(lhs_c) / rhs;
  };

  return calibrated_check("measure-duality", 1.0, op.dim_N() - op.order_m(), op.dim_N(),
                          box, resolution, mu, u_ensemble, slack, calibration, ratio_fn,
                          structural, "operator is not elliptic and canceling");
}

InequalityReport trace_inequality_check(const HomogeneousOperator& op, const VectorMeasure& nu,
                                        double q, double ell, bool fractional_form,
                                        const Box& box, const std::vector<int>& resolution,
                                        const EnsembleSpec& u_ensemble, double slack,
                                        double calibration) {
  double lambda = (op.dim_N() - ell) * q;

  auto ratio_fn = [&](const VectorMeasure& m, int index, const EnsembleSpec& spec) -> double {
    std::vector<PointMass> pts = support_points(m);
    GridField u = ensemble_member(box, resolution, op.dimE(), spec, index);
    GridField v = fractional_form ? fractional_laplacian(u, op.order_m() - ell)
                                  : derivative_tuple(u, op.order_m() - 1);
    double lhs_q = 0;
    for (const auto& p : pts) {
      double a = field_at(v, p.x).norm();
      if (a > 0) lhs_q += std::pow(a, q) * p.w;
    }
    double rhs = apply_operator(op, u).lp_norm(1);
    if (rhs <= 0) return 0;
    return power_mean(lhs_q, q) / rhs;
  };

  return calibrated_check(fractional_form ? "trace-fractional" : "trace-derivative", q,
                          lambda, op.dim_N(), box, resolution, nu, u_ensemble, slack,
                          calibration, ratio_fn);
}

// ---------------------------------------------------------------------------
// triviality of the strong-type space
// ---------------------------------------------------------------------------

TrivialityReport triviality_check(const VectorMeasure& mu, double m, double p,
                                  const std::vector<double>& R_list) {
  TrivialityReport rep;
  int N = mu.dim_N();
  double mass = mu.total_mass();
  if (mass <= 0) {
    rep.zero_measure = true;
    return rep;
  }
  double R = std::max(mu.support_radius(), 1e-6);
  double inner_mass = RadialMassProfile(mu, RVec::Zero(N)).mass(R);
  double sigma = sphere_surface_area(N);
  double a = (N - m) * p;  // decay exponent of the kernel factor

  for (double Rp : R_list) {
    // int_0^{R'} r^{N-1} (r+R)^{-a} dr by log-trapezoid from a tiny cutoff
    double r_lo = std::min(R, Rp) * 1e-6;
    int npts = 600;
    std::vector<double> rg = log_radii(r_lo, Rp, npts);
    double integral = 0;
    for (int i = 0; i + 1 < npts; ++i) {
      auto f = [&](double r) { return std::pow(r, N) * std::pow(r + R, -a); };
      // trapezoid in t = log r: integrand r^{N-1} (r+R)^{-a} dr = f(r) dt / 1
      double dt = std::log(rg[i + 1] / rg[i]);
      integral += 0.5 * (f(rg[i]) + f(rg[i + 1])) * dt;
    }
    rep.lower_bounds.push_back(std::pow(inner_mass, p) * sigma * integral);
  }
  rep.divergence = detect_divergence(decade_maxima(R_list, rep.lower_bounds, false));
  EnergyReport en = energy(mu, m, p, R_list, 32, 40);
  rep.energy_divergent = en.divergent.divergent;
  return rep;
}

// ---------------------------------------------------------------------------
// first-order necessity
// ---------------------------------------------------------------------------

NecessityReport first_order_necessity(const HomogeneousOperator& op, const GridField& f,
                                      int center_count, int radii_count,
                                      std::uint64_t seed) {
  if (op.order_m() != 1)
    throw std::invalid_argument("first_order_necessity: operator must have order 1");
  if (f.value_dim() != op.dimF())
    throw std::invalid_argument("first_order_necessity: field dimension mismatch");
  int N = f.dim_N();
  const std::vector<int>& res = f.resolution();

  // strides for periodic neighbor lookup
  std::vector<std::size_t> stride(N);
  stride[N - 1] = 1;
  for (int a = N - 2; a >= 0; --a) stride[a] = stride[a + 1] * res[a + 1];
  auto shifted = [&](std::size_t i, int axis, int d) -> std::size_t {
    int j = static_cast<int>((i / stride[axis]) % res[axis]);
    int jn = ((j + d) % res[axis] + res[axis]) % res[axis];
    return i + static_cast<std::size_t>(jn - j) * stride[axis];
  };

  // mu = A*(D)f = -sum_j a_j^H d_j f, 4th-order central differences
  GridField mu(f.box(), res, op.dimE());
  for (int c = 0; c < op.dimE(); ++c) mu.comp(c) = CVec::Zero(f.total());
  for (const auto& [alpha, a] : op.coeffs()) {
    int axis = 0;
    for (int d = 0; d < N; ++d)
      if (alpha.entries[d] == 1) axis = d;
    CMat aH = a.adjoint();  // dimE x dimF
    double h = f.spacing(axis);
    for (std::size_t i = 0; i < f.total(); ++i) {
      CVec df = (-f.value(shifted(i, axis, 2)) + 8.0 * f.value(shifted(i, axis, 1)) -
                 8.0 * f.value(shifted(i, axis, -1)) + f.value(shifted(i, axis, -2))) /
                (12.0 * h);
      CVec contrib = -(aH * df);
      for (int c = 0; c < op.dimE(); ++c) mu.comp(c)[i] += contrib[c];
    }
  }

  NecessityReport rep;
  double csum = 0;
  for (const auto& [alpha, a] : op.coeffs()) {
    Eigen::JacobiSVD<CMat> svd(a);
    csum += svd.singularValues()(0);
  }
  rep.C_N = sphere_surface_area(N) * csum;

  RVec center = 0.5 * (f.box().lo + f.box().hi);
  double half_min = std::numeric_limits<double>::infinity();
  double h_max = 0;
  for (int a = 0; a < N; ++a) {
    half_min = std::min(half_min, 0.5 * f.box().length(a));
    h_max = std::max(h_max, f.spacing(a));
  }

  // positivity over the interior region, away from the wrap-around boundary
  double interior = 0.35 * half_min;
  double mu_scale = mu.max_abs();
  rep.positive_density = true;
  for (std::size_t i = 0; i < mu.total(); ++i) {
    if ((mu.point(i) - center).norm() > interior) continue;
    for (int c = 0; c < op.dimE(); ++c) {
      Complex v = mu.comp(c)[i];
      if (v.real() < -1e-7 * mu_scale || v.imag() < -1e-7 * mu_scale)
        rep.positive_density = false;
    }
  }

  // |mu(B(x,r))| / (||f||_inf r^{N-1}) over interior centers and radii
  double fsup = f.max_abs();
  double r_hi = 0.15 * half_min;
  double r_lo = 3.0 * h_max;
  if (r_lo >= r_hi) r_lo = 0.3 * r_hi;
  std::vector<double> radii = log_radii(r_lo, r_hi, radii_count);
  std::reverse(radii.begin(), radii.end());  // descending r: small-r end last
  rep.radii = radii;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<RVec> centers;
  centers.push_back(center);
  while (static_cast<int>(centers.size()) < center_count) {
    RVec x(N);
    for (int a = 0; a < N; ++a) x[a] = uni(rng);
    if (x.norm() > 1) continue;
    centers.push_back(center + 0.15 * half_min * x);
  }

  std::vector<RVec> cell_pts(mu.total());
  for (std::size_t i = 0; i < mu.total(); ++i) cell_pts[i] = mu.point(i);
  double vol = mu.cell_volume();

  rep.per_radius_max.assign(radii.size(), 0.0);
  for (const RVec& x : centers) {
    // cells sorted by distance once per center
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(mu.total());
    double r_max = radii.front();
    for (std::size_t i = 0; i < mu.total(); ++i) {
      double d = (cell_pts[i] - x).norm();
      if (d <= r_max) dist.push_back({d, i});
    }
    std::sort(dist.begin(), dist.end());
    // prefix sums of mu over cells by distance
    std::vector<CVec> prefix(dist.size() + 1, CVec::Zero(op.dimE()));
    for (std::size_t k = 0; k < dist.size(); ++k)
      prefix[k + 1] = prefix[k] + mu.value(dist[k].second) * vol;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
      double r = radii[ri];
      auto it = std::upper_bound(dist.begin(), dist.end(),
                                 std::make_pair(r, std::numeric_limits<std::size_t>::max()));
      CVec ball = prefix[static_cast<std::size_t>(it - dist.begin())];
      double ratio = ball.norm() / (fsup * std::pow(r, N - 1));
      rep.per_radius_max[ri] = std::max(rep.per_radius_max[ri], ratio);
      rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
  }
  rep.pass = rep.max_ratio <= rep.C_N;
  return rep;
}

}  // namespace rieszlab
