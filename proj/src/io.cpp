#include "rieszlab/io.hpp"

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

namespace rieszlab {

namespace {

Json vec_to_json(const RVec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json cvec_real(const CVec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i].real());
  return a;
}

Json cvec_imag(const CVec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i].imag());
  return a;
}

RVec json_to_vec(const Json& a) {
  RVec v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<int>(i)] = a[i].get<double>();
  return v;
}

Json trend_to_json(const TrendFlag& t) {
  return Json{{"divergent", t.divergent}, {"values", t.values}};
}

}  // namespace

HomogeneousOperator parse_operator(const Json& doc) {
  try {
    int N = doc.at("N").get<int>();
    int m = doc.at("m").get<int>();
    int dimE = doc.at("dimE").get<int>();
    int dimF = doc.at("dimF").get<int>();
    std::map<MultiIndex, CMat> coeffs;
    for (const Json& term : doc.at("terms")) {
      MultiIndex alpha;
      for (const Json& e : term.at("alpha")) alpha.entries.push_back(e.get<int>());
      const Json& re = term.at("re");
      const Json& im = term.at("im");
      if (static_cast<int>(re.size()) != dimF || static_cast<int>(im.size()) != dimF)
        throw OperatorParseError("operator: coefficient row count != dimF");
      CMat a(dimF, dimE);
      for (int r = 0; r < dimF; ++r) {
        if (static_cast<int>(re[r].size()) != dimE || static_cast<int>(im[r].size()) != dimE)
          throw OperatorParseError("operator: coefficient column count != dimE");
        for (int c = 0; c < dimE; ++c)
          a(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
      }
      auto [it, fresh] = coeffs.insert({alpha, a});
      if (!fresh) it->second += a;
    }
    return HomogeneousOperator(N, m, dimE, dimF, std::move(coeffs));
  } catch (const Json::exception& e) {
    throw OperatorParseError(std::string("operator document: ") + e.what());
  }
}

Json serialize_operator(const HomogeneousOperator& op) {
  Json terms = Json::array();
  for (const auto& [alpha, a] : op.coeffs()) {
    Json re = Json::array(), im = Json::array();
    for (int r = 0; r < a.rows(); ++r) {
      Json rr = Json::array(), ri = Json::array();
      for (int c = 0; c < a.cols(); ++c) {
        rr.push_back(a(r, c).real());
        ri.push_back(a(r, c).imag());
      }
      re.push_back(rr);
      im.push_back(ri);
    }
    terms.push_back(Json{{"alpha", alpha.entries}, {"re", re}, {"im", im}});
  }
  return Json{{"N", op.dim_N()}, {"m", op.order_m()}, {"dimE", op.dimE()},
              {"dimF", op.dimF()}, {"terms", terms}};
}

VectorMeasure parse_measure(const Json& doc) {
  try {
    int N = doc.at("N").get<int>();
    int dimE = doc.at("dimE").get<int>();
    std::string kind = doc.at("kind").get<std::string>();
    if (kind == "atomic") {
      std::vector<VectorMeasure::Atom> atoms;
      for (const Json& a : doc.at("atoms")) {
        VectorMeasure::Atom atom;
        atom.point = json_to_vec(a.at("point"));
        RVec wr = json_to_vec(a.at("weight_re"));
        RVec wi = json_to_vec(a.at("weight_im"));
        if (wr.size() != dimE || wi.size() != dimE)
          throw std::invalid_argument("measure: atom weight size != dimE");
        atom.weight = CVec(dimE);
        for (int c = 0; c < dimE; ++c) atom.weight[c] = Complex(wr[c], wi[c]);
        atoms.push_back(std::move(atom));
      }
      return VectorMeasure::atomic(N, dimE, std::move(atoms));
    }
    if (kind == "gridded") {
      Box box;
      box.lo = json_to_vec(doc.at("box").at("lo"));
      box.hi = json_to_vec(doc.at("box").at("hi"));
      std::vector<int> res;
      for (const Json& r : doc.at("resolution")) res.push_back(r.get<int>());
      const Json& dre = doc.at("density_re");
      const Json& dim_ = doc.at("density_im");
      if (static_cast<int>(dre.size()) != dimE || static_cast<int>(dim_.size()) != dimE)
        throw std::invalid_argument("measure: density component count != dimE");
      std::vector<CVec> density(dimE);
      for (int c = 0; c < dimE; ++c) {
        const Json& re = dre[c];
        const Json& im = dim_[c];
        if (re.size() != im.size())
          throw std::invalid_argument("measure: density re/im length mismatch");
        density[c] = CVec(re.size());
        for (std::size_t i = 0; i < re.size(); ++i)
          density[c][static_cast<int>(i)] = Complex(re[i].get<double>(), im[i].get<double>());
      }
      return VectorMeasure::gridded(box, res, std::move(density));
    }
    throw std::invalid_argument("measure: kind must be \"atomic\" or \"gridded\"");
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("measure document: ") + e.what());
  }
}

Json serialize_measure(const VectorMeasure& mu) {
  Json doc{{"N", mu.dim_N()}, {"dimE", mu.dimE()}};
  if (mu.kind() == VectorMeasure::Kind::Atomic) {
    doc["kind"] = "atomic";
    Json atoms = Json::array();
    for (const auto& a : mu.atoms())
      atoms.push_back(Json{{"point", vec_to_json(a.point)},
                           {"weight_re", cvec_real(a.weight)},
                           {"weight_im", cvec_imag(a.weight)}});
    doc["atoms"] = atoms;
  } else {
    doc["kind"] = "gridded";
    doc["box"] = Json{{"lo", vec_to_json(mu.box().lo)}, {"hi", vec_to_json(mu.box().hi)}};
    doc["resolution"] = mu.resolution();
    Json dre = Json::array(), dim_ = Json::array();
    for (int c = 0; c < mu.dimE(); ++c) {
      dre.push_back(cvec_real(mu.density()[c]));
      dim_.push_back(cvec_imag(mu.density()[c]));
    }
    doc["density_re"] = dre;
    doc["density_im"] = dim_;
  }
  return doc;
}

Json serialize_certificate(const StructureCertificate& cert) {
  Json doc{{"sample_size", cert.sample_size},
           {"sample_seed", cert.sample_seed},
           {"tolerance", cert.tolerance}};
  if (cert.elliptic) {
    doc["elliptic"] = *cert.elliptic;
    doc["min_singular_value"] = cert.min_singular_value;
    doc["max_singular_value"] = cert.max_singular_value;
    doc["witness_xi"] = vec_to_json(cert.witness_xi);
  }
  if (cert.canceling) {
    doc["canceling"] = *cert.canceling;
    doc["intersection_dim"] = cert.intersection_dim;
    Json basis = Json::array();
    for (const CVec& b : cert.intersection_basis)
      basis.push_back(Json{{"re", cvec_real(b)}, {"im", cvec_imag(b)}});
    doc["intersection_basis"] = basis;
  }
  return doc;
}

Json serialize_certificate(const CocancelingCertificate& cert) {
  Json basis = Json::array();
  for (const CVec& b : cert.intersection_basis)
    basis.push_back(Json{{"re", cvec_real(b)}, {"im", cvec_imag(b)}});
  return Json{{"cocanceling", cert.cocanceling},
              {"intersection_dim", cert.intersection_dim},
              {"intersection_basis", basis},
              {"sample_size", cert.sample_size},
              {"sample_seed", cert.sample_seed},
              {"tolerance", cert.tolerance}};
}

Json serialize_report(const AnnihilatorReport& rep) {
  return Json{{"containment_all", rep.containment_all},
              {"max_composition_norm", rep.max_composition_norm},
              {"failed_samples", rep.failed_samples},
              {"intersections_match", rep.intersections_match},
              {"ker_intersection_dim", rep.ker_intersection_dim},
              {"range_intersection_dim", rep.range_intersection_dim},
              {"sample_size", rep.sample_size}};
}

Json serialize_report(const RegularityReport& rep) {
  return Json{{"lambda", rep.lambda},
              {"ahlfors", rep.ahlfors},
              {"origin_ahlfors", rep.origin_ahlfors},
              {"wolff_bracket", rep.wolff_bracket},
              {"ahlfors_trend", trend_to_json(rep.ahlfors_trend)},
              {"origin_trend", trend_to_json(rep.origin_trend)},
              {"wolff_trend", trend_to_json(rep.wolff_trend)},
              {"center_count", rep.center_count},
              {"radii_count", rep.radii_count}};
}

Json serialize_report(const EnergyReport& rep) {
  return Json{{"m", rep.m},
              {"p", rep.p},
              {"R_list", rep.R_list},
              {"truncated_energies", rep.truncated},
              {"divergent", trend_to_json(rep.divergent)}};
}

Json serialize_report(const WeakEnergyReport& rep) {
  return Json{{"weak_quasinorm", rep.quasinorm},
              {"lambda_grid", rep.lambda_grid},
              {"level_volumes", rep.level_volumes},
              {"domain_trend", trend_to_json(rep.domain_trend)}};
}

Json serialize_report(const SolveResult& res) {
  Json norms = Json::object();
  for (const auto& [p, v] : res.lp_norms) {
    if (std::isinf(p))
      norms["inf"] = v;
    else
      norms[std::to_string(p)] = v;
  }
  return Json{{"mean_adjustment_re", cvec_real(res.mean_adjustment)},
              {"mean_adjustment_im", cvec_imag(res.mean_adjustment)},
              {"spectral_residual", res.spectral_residual},
              {"weak_residual", res.weak_residual},
              {"lp_norms", norms},
              {"resolution", res.f.resolution()}};
}

Json serialize_report(const KernelProfile& prof) {
  return Json{{"N", prof.dim_N},
              {"resolution", prof.resolution},
              {"box_half_side", prof.box_half_side},
              {"homogeneity_exponent_fit", prof.homogeneity_exponent_fit},
              {"bound_constant_ka", prof.bound_constant_ka},
              {"bound_constant_kb", prof.bound_constant_kb},
              {"dimE", prof.dimE},
              {"dimF", prof.dimF}};
}

Json serialize_report(const ReproduceReport& rep) {
  return Json{{"spectral_error", rep.spectral_error},
              {"realspace_error", rep.realspace_error},
              {"domination_margin", rep.domination_margin},
              {"removed_mean_re", cvec_real(rep.removed_mean)},
              {"removed_mean_im", cvec_imag(rep.removed_mean)}};
}

Json serialize_report(const InequalityReport& rep) {
  return Json{{"id", rep.id},
              {"ensemble_size", rep.ensemble_size},
              {"seed", rep.seed},
              {"empirical_best_constant", rep.empirical_best_constant},
              {"predicted_constant", rep.predicted_constant},
              {"calibration_scalar", rep.calibration_scalar},
              {"functional_bracket", rep.functional_bracket},
              {"slack", rep.slack},
              {"violations", rep.violations},
              {"pass", rep.pass},
              {"hypotheses_met", rep.hypotheses_met},
              {"hypothesis_note", rep.hypothesis_note},
              {"trend", rep.trend}};
}

Json serialize_report(const TrivialityReport& rep) {
  return Json{{"zero_measure", rep.zero_measure},
              {"lower_bounds", rep.lower_bounds},
              {"divergence", trend_to_json(rep.divergence)},
              {"energy_divergent", rep.energy_divergent}};
}

Json serialize_report(const NecessityReport& rep) {
  return Json{{"C_N", rep.C_N},
              {"max_ratio", rep.max_ratio},
              {"positive_density", rep.positive_density},
              {"pass", rep.pass},
              {"per_radius_max", rep.per_radius_max},
              {"radii", rep.radii}};
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);
}

void write_json(const std::string& path, const Json& doc) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace rieszlab
