// rieszlab command-line front end.
//
// Exit codes: 0 completed (verdicts are data, never exit codes), 2 input
// error, 3 numeric failure, 4 precondition violation.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "rieszlab/certificate.hpp"
#include "rieszlab/inequality.hpp"
#include "rieszlab/io.hpp"
#include "rieszlab/potentials.hpp"

namespace rz = rieszlab;
using Json = rz::Json;

namespace {

constexpr const char* kVersion = "rieszlab 1.0.0";

std::uint64_t file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

Json manifest(const std::string& command, const std::vector<std::string>& inputs,
              std::uint64_t seed, const std::vector<int>& resolution) {
  Json digests = Json::object();
  for (const auto& p : inputs) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(file_digest(p)));
    digests[p] = buf;
  }
  return Json{{"command", command},
              {"input_digests", digests},
              {"seed", seed},
              {"resolution", resolution},
              {"tool_version", kVersion}};
}

struct CommonOpts {
  std::string op_path, measure_path, out = "-";
  int samples = 256;
  double tol = 0.0;
  int resolution = 64;
  int padding = 4;
  std::uint64_t seed = 1;
  int ensemble = 100;
  double lambda = -1;
  double m = 1;
  std::vector<double> p_list;
  double q = 1;
  double ell = 1;
};

rz::Box default_box(int N) { return rz::Box::centered_cube(N, 4.0); }

int run_operator(const CommonOpts& o) {
  rz::HomogeneousOperator op = rz::parse_operator(rz::load_json(o.op_path));
  rz::StructureCertificate cert =
      rz::check_canceling(op, o.samples, o.tol, rz::check_ellipticity(op, o.samples, o.tol));
  rz::CocancelingCertificate co = rz::check_cocanceling(op, o.samples, o.tol);
  Json doc{{"manifest", manifest("operator", {o.op_path}, 0, {})},
           {"structure", rz::serialize_certificate(cert)},
           {"cocanceling", rz::serialize_certificate(co)}};
  rz::write_json(o.out, doc);
  return 0;
}

int run_measure(const CommonOpts& o) {
  rz::VectorMeasure mu = rz::parse_measure(rz::load_json(o.measure_path));
  double lambda = o.lambda >= 0 ? o.lambda : mu.dim_N() - o.m;
  rz::RegularityReport reg = rz::regularity_report(mu, lambda);
  double p = o.p_list.empty() ? 2.0 : o.p_list.front();
  rz::EnergyReport en = rz::energy(mu, o.m, p, {10, 100, 1000});
  rz::WeakEnergyReport weak = rz::weak_energy(mu, o.m, 100.0);
  Json doc{{"manifest", manifest("measure", {o.measure_path}, 0, {})},
           {"regularity", rz::serialize_report(reg)},
           {"energy", rz::serialize_report(en)},
           {"weak_energy", rz::serialize_report(weak)}};
  rz::write_json(o.out, doc);
  return 0;
}

int run_solve(const CommonOpts& o) {
  rz::HomogeneousOperator op = rz::parse_operator(rz::load_json(o.op_path));
  rz::VectorMeasure mu = rz::parse_measure(rz::load_json(o.measure_path));
  if (mu.kind() != rz::VectorMeasure::Kind::Gridded)
    throw rz::SolverError("solve requires a gridded measure (its grid hosts the solution)");
  std::vector<double> ps = o.p_list.empty() ? std::vector<double>{2.0} : o.p_list;
  rz::SolveResult res = rz::solve_measure(op, mu, ps);
  if (o.ensemble > 0) {
    rz::EnsembleSpec spec;
    spec.seed = o.seed;
    spec.count = o.ensemble;
    res.weak_residual = rz::weak_residual(op, res.f, mu, spec);
  }
  Json doc{{"manifest", manifest("solve", {o.op_path, o.measure_path}, o.seed,
                                 mu.resolution())},
           {"solve", rz::serialize_report(res)}};
  rz::write_json(o.out, doc);
  return 0;
}

int run_verify(const std::string& id, const CommonOpts& o, double u_exp, double v_exp,
               bool fractional) {
  if (o.ensemble <= 0) throw std::invalid_argument("--ensemble must be positive");
  rz::EnsembleSpec spec;
  spec.seed = o.seed;
  spec.count = o.ensemble;

  Json doc;
  std::vector<std::string> inputs;
  auto need_op = [&]() {
    inputs.push_back(o.op_path);
    return rz::parse_operator(rz::load_json(o.op_path));
  };
  auto need_mu = [&]() {
    inputs.push_back(o.measure_path);
    return rz::parse_measure(rz::load_json(o.measure_path));
  };

  if (id == "hardy") {
    rz::VectorMeasure nu = need_mu();
    rz::Box box = default_box(nu.dim_N());
    std::vector<int> res(nu.dim_N(), o.resolution);
    auto uw = [u_exp](const rz::RVec& x) { return std::pow(x.norm(), u_exp); };
    auto vw = [v_exp](const rz::RVec& x) { return std::pow(x.norm(), v_exp); };
    doc["report"] = rz::serialize_report(
        rz::hardy_forward(uw, vw, nu, o.q, box, res, spec));
  } else if (id == "fundamental-lemma") {
    rz::HomogeneousOperator op = need_op();
    rz::VectorMeasure nu = need_mu();
    rz::Box box = default_box(op.dim_N());
    std::vector<int> res(op.dim_N(), o.resolution);
    rz::FundamentalLemmaOptions fo;
    fo.q = o.q;
    fo.ell = o.ell;
    doc["report"] =
        rz::serialize_report(rz::fundamental_lemma_check(op, nu, fo, box, res, spec));
  } else if (id == "measure-duality") {
    rz::HomogeneousOperator op = need_op();
    rz::VectorMeasure mu = need_mu();
    rz::Box box = default_box(op.dim_N());
    std::vector<int> res(op.dim_N(), o.resolution);
    doc["report"] = rz::serialize_report(rz::measure_duality_check(op, mu, box, res, spec));
  } else if (id == "trace") {
    rz::HomogeneousOperator op = need_op();
    rz::VectorMeasure nu = need_mu();
    rz::Box box = default_box(op.dim_N());
    std::vector<int> res(op.dim_N(), o.resolution);
    doc["report"] = rz::serialize_report(
        rz::trace_inequality_check(op, nu, o.q, o.ell, fractional, box, res, spec));
  } else if (id == "moment") {
    rz::HomogeneousOperator L = need_op();
    rz::Box box = default_box(L.dim_N());
    std::vector<int> res(L.dim_N(), o.resolution);
    rz::EnsembleSpec fs = spec;
    fs.seed = o.seed ^ 0xABCDULL;
    rz::GridField f =
        rz::project_onto_kernel(L, rz::ensemble_member(box, res, L.dimE(), fs, 0));
    doc["report"] = rz::serialize_report(rz::cocanceling_moment_check(L, f, spec));
  } else if (id == "triviality") {
    rz::VectorMeasure mu = need_mu();
    double p = o.p_list.empty() ? 2.0 : o.p_list.front();
    doc["report"] =
        rz::serialize_report(rz::triviality_check(mu, o.m, p, {10, 100, 1000, 10000}));
  } else if (id == "necessity") {
    rz::HomogeneousOperator op = need_op();
    rz::Box box = default_box(op.dim_N());
    std::vector<int> res(op.dim_N(), o.resolution);
    rz::GridField f = rz::ensemble_member(box, res, op.dimF(), spec, 0);
    doc["report"] = rz::serialize_report(rz::first_order_necessity(op, f));
  } else {
    throw std::invalid_argument("unknown inequality id: " + id);
  }
  doc["manifest"] = manifest("verify " + id, inputs, o.seed,
                             std::vector<int>(1, o.resolution));
  rz::write_json(o.out, doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure certificates, Riesz-potential analysis, and inequality "
               "verification for homogeneous constant-coefficient operators"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string verify_id;
  double u_exp = 0, v_exp = 0;
  bool fractional = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--samples", o.samples, "sphere sample count");
    c->add_option("--tol", o.tol, "numerical tolerance (0 = scale-free default)");
    c->add_option("--resolution", o.resolution, "grid points per axis");
    c->add_option("--padding", o.padding, "zero-padding factor for convolutions");
    c->add_option("--seed", o.seed, "RNG seed");
    c->add_option("--ensemble", o.ensemble, "test ensemble size");
    c->add_option("--lambda", o.lambda, "regularity exponent");
    c->add_option("--m", o.m, "potential order");
    c->add_option("--p", o.p_list, "integrability exponent(s)");
    c->add_option("--q", o.q, "trace exponent q");
    c->add_option("--ell", o.ell, "trace order ell");
    c->add_option("--out", o.out, "output path (- = stdout)");
  };

  CLI::App* c_op = app.add_subcommand("operator", "structure certificates for an operator");
  c_op->add_option("spec", o.op_path, "operator document")->required();
  add_common(c_op);

  CLI::App* c_mu = app.add_subcommand("measure", "regularity and energy reports");
  c_mu->add_option("measure", o.measure_path, "measure document")->required();
  add_common(c_mu);

  CLI::App* c_sv = app.add_subcommand("solve", "solve A*(D)f = mu on the measure grid");
  c_sv->add_option("spec", o.op_path, "operator document")->required();
  c_sv->add_option("measure", o.measure_path, "measure document")->required();
  add_common(c_sv);

  CLI::App* c_vf = app.add_subcommand("verify", "run an inequality suite");
  c_vf->add_option("id", verify_id,
                   "hardy | fundamental-lemma | measure-duality | trace | moment | "
                   "triviality | necessity")
      ->required();
  c_vf->add_option("--operator", o.op_path, "operator document");
  c_vf->add_option("--measure", o.measure_path, "measure document");
  c_vf->add_option("--u-exponent", u_exp, "radial power of the numerator weight (hardy)");
  c_vf->add_option("--v-exponent", v_exp, "radial power of the denominator weight (hardy)");
  c_vf->add_flag("--fractional", fractional, "use the fractional-Laplacian trace form");
  add_common(c_vf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_op->parsed()) return run_operator(o);
    if (c_mu->parsed()) return run_measure(o);
    if (c_sv->parsed()) return run_solve(o);
    if (c_vf->parsed()) return run_verify(verify_id, o, u_exp, v_exp, fractional);
  } catch (const rz::SolverError& e) {
    std::fprintf(stderr, "precondition violation: %s\n", e.what());
    return 4;
  } catch (const rz::OperatorParseError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const Json::exception& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  }
  return 0;
}
