#include <doctest.h>

#include <cstdio>
#include <nlohmann/json.hpp>

#include "rieszlab/io.hpp"

using namespace rieszlab;

TEST_CASE("operator document round trip") {
  HomogeneousOperator op = catalog::total_derivative(2, 2);
  Json doc = serialize_operator(op);
  HomogeneousOperator back = parse_operator(doc);
  CHECK(back.dim_N() == op.dim_N());
  CHECK(back.order_m() == op.order_m());
  CHECK(back.dimE() == op.dimE());
  CHECK(back.dimF() == op.dimF());
  RVec xi(2);
  xi << 0.3, -1.1;
  CHECK((back.symbol_at(xi) - op.symbol_at(xi)).norm() < 1e-14);
}

TEST_CASE("duplicate alpha terms are summed") {
  Json doc = serialize_operator(catalog::partial(2, 0));
  Json dup = doc;
  dup["terms"].push_back(doc["terms"][0]);  // same alpha twice
  HomogeneousOperator op = parse_operator(dup);
  RVec xi(2);
  xi << 1.0, 0.0;
  CHECK(op.symbol_at(xi)(0, 0).real() == doctest::Approx(2.0));
}

TEST_CASE("malformed operator documents raise OperatorParseError") {
  Json doc = serialize_operator(catalog::gradient(2));
  Json missing = doc;
  missing.erase("terms");
  CHECK_THROWS_AS(parse_operator(missing), OperatorParseError);
  Json badshape = doc;
  badshape["terms"][0]["re"] = Json::array();  // wrong row count
  CHECK_THROWS_AS(parse_operator(badshape), OperatorParseError);
  Json badtype = doc;
  badtype["N"] = "two";
  CHECK_THROWS_AS(parse_operator(badtype), OperatorParseError);
}

TEST_CASE("atomic measure round trip") {
  VectorMeasure::Atom a;
  a.point = RVec(2);
  a.point << 0.5, -0.25;
  a.weight = CVec(2);
  a.weight << Complex(1, 2), Complex(0, 3);
  auto mu = VectorMeasure::atomic(2, 2, {a});
  auto back = parse_measure(serialize_measure(mu));
  CHECK(back.kind() == VectorMeasure::Kind::Atomic);
  CHECK(back.atoms().size() == 1);
  CHECK((back.atoms()[0].point - a.point).norm() < 1e-15);
  CHECK(std::abs(back.atoms()[0].weight[0] - a.weight[0]) < 1e-15);
  CHECK(back.total_mass() == doctest::Approx(mu.total_mass()));
}

TEST_CASE("gridded measure round trip") {
  Box b = Box::centered_cube(2, 1.0);
  std::vector<CVec> den{CVec::Zero(16)};
  for (int i = 0; i < 16; ++i) den[0][i] = Complex(i * 0.25, i * 0.5);
  auto mu = VectorMeasure::gridded(b, {4, 4}, den);
  auto back = parse_measure(serialize_measure(mu));
  CHECK(back.kind() == VectorMeasure::Kind::Gridded);
  CHECK(back.resolution() == mu.resolution());
  CHECK((back.density()[0] - mu.density()[0]).norm() < 1e-15);
  CHECK((back.box().lo - b.lo).norm() < 1e-15);
}

TEST_CASE("malformed measure documents raise invalid_argument") {
  Json doc = serialize_measure(VectorMeasure::zero(2, 1));
  Json badkind = doc;
  badkind["kind"] = "mystery";
  CHECK_THROWS_AS(parse_measure(badkind), std::invalid_argument);
  Json missing = doc;
  missing.erase("N");
  CHECK_THROWS_AS(parse_measure(missing), std::invalid_argument);
}

TEST_CASE("certificate and report serialization carry the headline keys") {
  auto cert = check_ellipticity(catalog::gradient(2), 64);
  Json cj = serialize_certificate(cert);
  CHECK(cj.at("elliptic").get<bool>());
  CHECK(cj.contains("sample_seed"));
  CHECK(cj.at("min_singular_value").get<double>() > 0);

  InequalityReport rep;
  rep.id = "demo";
  rep.pass = true;
  rep.violations = {3, 7};
  Json rj = serialize_report(rep);
  CHECK(rj.at("id") == "demo");
  CHECK(rj.at("pass").get<bool>());
  CHECK(rj.at("violations").size() == 2);

  NecessityReport nr;
  nr.C_N = 12.0;
  Json nj = serialize_report(nr);
  CHECK(nj.at("C_N").get<double>() == doctest::Approx(12.0));
}

TEST_CASE("load_json and write_json round trip through a file") {
  Json doc = serialize_operator(catalog::laplacian(2));
  std::string path = "/tmp/rieszlab_test_io.json";
  write_json(path, doc);
  Json back = load_json(path);
  CHECK(back == doc);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_json("/nonexistent/nope.json"), std::invalid_argument);
}
