#pragma once

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "pginv/algebra.hpp"
#include "pginv/maps.hpp"
#include "pginv/report.hpp"
#include "pginv/triples.hpp"

namespace pginv {

// JSON shapes (schema_version 1):
//   AlgebraSpec     {"blocks": [n1, n2, ...]}
//   AlgebraElement  {"blocks": [[[ [re,im], ... ], ...], ...]}  row-major per block
//   LinMap          {"domain": spec, "codomain": spec, "matrix": [[[re,im],...],...]}
//   TripleSystem    {"kind":"cstar","blocks":[...]} or {"kind":"rect","p":p,"q":q}
//   CheckReport     {"check_name","verdict","residuals","witnesses","rule","seed"?}
// Doubles are written in shortest round-trip decimal form, so
// serialize(parse(s)) is bit-exact.

nlohmann::json to_json(const AlgebraSpec& spec);
nlohmann::json to_json(const AlgebraElement& x);
nlohmann::json to_json(const CMatrix& m);
nlohmann::json to_json(const LinMap& f);
nlohmann::json to_json(const TripleSystem& sys);
nlohmann::json to_json(const CheckReport& rep);

AlgebraSpec algebra_spec_from_json(const nlohmann::json& j);
AlgebraElement element_from_json(const nlohmann::json& j);
CMatrix cmatrix_from_json(const nlohmann::json& j);
LinMap linmap_from_json(const nlohmann::json& j);
TripleSystem triple_system_from_json(const nlohmann::json& j);
CheckReport report_from_json(const nlohmann::json& j);

// On-disk instance bundle. All sections optional; names are free-form keys.
struct InstanceFile {
  int schema_version = 1;
  std::map<std::string, AlgebraSpec> algebras;
  std::map<std::string, AlgebraElement> elements;
  std::map<std::string, LinMap> maps;
  std::map<std::string, std::pair<LinMap, LinMap>> pairs;  // phi, psi
  std::map<std::string, TripleSystem> triple_systems;
};

nlohmann::json to_json(const InstanceFile& f);
InstanceFile instance_from_json(const nlohmann::json& j);

InstanceFile load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const InstanceFile& f);

}  // namespace pginv
