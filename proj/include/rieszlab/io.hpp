#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "rieszlab/certificate.hpp"
#include "rieszlab/inequality.hpp"
#include "rieszlab/measure.hpp"
#include "rieszlab/potentials.hpp"
#include "rieszlab/regularity.hpp"
#include "rieszlab/solver.hpp"

namespace rieszlab {

using Json = nlohmann::json;

/// Operator document: { N, m, dimE, dimF, terms: [ { alpha: [int x N],
/// re: dF x dE matrix, im: dF x dE matrix } ] }. Throws OperatorParseError.
HomogeneousOperator parse_operator(const Json& doc);
Json serialize_operator(const HomogeneousOperator& op);

/// Measure document: { N, dimE, kind: "atomic" | "gridded", ... } with
/// atoms: [ { point, weight_re, weight_im } ] or box.lo/box.hi, resolution,
/// density_re/density_im (one flat array per component). Throws
/// std::invalid_argument on malformed input.
VectorMeasure parse_measure(const Json& doc);
Json serialize_measure(const VectorMeasure& mu);

Json serialize_certificate(const StructureCertificate& cert);
Json serialize_certificate(const CocancelingCertificate& cert);
Json serialize_report(const AnnihilatorReport& rep);
Json serialize_report(const RegularityReport& rep);
Json serialize_report(const EnergyReport& rep);
Json serialize_report(const WeakEnergyReport& rep);
Json serialize_report(const SolveResult& res);
Json serialize_report(const KernelProfile& prof);
Json serialize_report(const ReproduceReport& rep);
Json serialize_report(const InequalityReport& rep);
Json serialize_report(const TrivialityReport& rep);
Json serialize_report(const NecessityReport& rep);

Json load_json(const std::string& path);               // throws on parse error
void write_json(const std::string& path, const Json& doc);  // "-" -> stdout

}  // namespace rieszlab
