#include "pginv/serialize.hpp"

#include <fstream>

namespace pginv {

namespace {

nlohmann::json complex_to_json(const Complex& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("expected a complex entry [re, im]");
  }
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw ParseError("non-finite complex entry");
  }
  return {re, im};
}

nlohmann::json matrix_rows_to_json(const CMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_rows_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty row array");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw ParseError("expected rows of complex entries");
  const std::size_t cols = j[0].size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
    }
  }
  return m;
}

}  // namespace

nlohmann::json to_json(const AlgebraSpec& spec) {
  return nlohmann::json{{"blocks", spec.block_sizes}};
}

AlgebraSpec algebra_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array()) {
    throw ParseError("algebra spec: expected {\"blocks\": [n1, ...]}");
  }
  std::vector<int> sizes;
  for (const auto& v : j["blocks"]) {
    if (!v.is_number_integer() || v.get<int>() < 1) {
      throw ParseError("algebra spec: block sizes must be positive integers");
    }
    sizes.push_back(v.get<int>());
  }
  if (sizes.empty()) throw ParseError("algebra spec: need at least one block");
  return AlgebraSpec(std::move(sizes));
}

nlohmann::json to_json(const AlgebraElement& x) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const CMatrix& b : x.blocks) blocks.push_back(matrix_rows_to_json(b));
  return nlohmann::json{{"blocks", blocks}};
}

AlgebraElement element_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array() || j["blocks"].empty()) {
    throw ParseError("algebra element: expected {\"blocks\": [...]}");
  }
  std::vector<CMatrix> blocks;
  std::vector<int> sizes;
  for (const auto& jb : j["blocks"]) {
    CMatrix m = matrix_rows_from_json(jb);
    if (m.rows() != m.cols()) throw ParseError("algebra element: blocks must be square");
    sizes.push_back(static_cast<int>(m.rows()));
    blocks.push_back(std::move(m));
  }
  return AlgebraElement(AlgebraSpec(std::move(sizes)), std::move(blocks));
}

nlohmann::json to_json(const CMatrix& m) {
  return matrix_rows_to_json(m);
}

CMatrix cmatrix_from_json(const nlohmann::json& j) {
  return matrix_rows_from_json(j);
}

nlohmann::json to_json(const LinMap& f) {
  return nlohmann::json{
      {"domain", to_json(f.domain)}, {"codomain", to_json(f.codomain)},
      {"matrix", matrix_rows_to_json(f.matrix)}};
}

LinMap linmap_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("codomain") ||
      !j.contains("matrix")) {
    throw ParseError("linear map: expected {\"domain\", \"codomain\", \"matrix\"}");
  }
  const AlgebraSpec dom = algebra_spec_from_json(j["domain"]);
  const AlgebraSpec cod = algebra_spec_from_json(j["codomain"]);
  CMatrix m = matrix_rows_from_json(j["matrix"]);
  if (m.rows() != cod.dim() || m.cols() != dom.dim()) {
    throw ParseError("linear map: matrix shape does not match the algebras");
  }
  return LinMap(dom, cod, std::move(m));
}

nlohmann::json to_json(const TripleSystem& sys) {
  if (sys.kind == TripleKind::cstar) {
    return nlohmann::json{{"kind", "cstar"}, {"blocks", sys.algebra.block_sizes}};
  }
  return nlohmann::json{{"kind", "rect"}, {"p", sys.p}, {"q", sys.q}};
}

TripleSystem triple_system_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("triple system: expected a kind");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "cstar") {
    return TripleSystem::cstar(algebra_spec_from_json(j));
  }
  if (kind == "rect") {
    if (!j.contains("p") || !j.contains("q")) throw ParseError("triple system: rect needs p, q");
    return TripleSystem::rectangular(j["p"].get<int>(), j["q"].get<int>());
  }
  throw ParseError("triple system: unknown kind " + kind);
}

nlohmann::json to_json(const CheckReport& rep) {
  nlohmann::json j{{"check_name", rep.check_name},
                   {"verdict", to_string(rep.verdict)},
                   {"residuals", rep.residuals},
                   {"rule", rep.rule}};
  if (!rep.witnesses.empty()) j["witnesses"] = rep.witnesses;
  if (rep.seed) j["seed"] = *rep.seed;
  return j;
}

CheckReport report_from_json(const nlohmann::json& j) {
  CheckReport rep;
  rep.check_name = j.at("check_name").get<std::string>();
  rep.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  for (const auto& [k, v] : j.at("residuals").items()) rep.residuals[k] = v.get<double>();
  if (j.contains("witnesses")) rep.witnesses = j["witnesses"];
  rep.rule = j.value("rule", "");
  if (j.contains("seed")) rep.seed = j["seed"].get<std::int64_t>();
  return rep;
}

nlohmann::json to_json(const InstanceFile& f) {
  nlohmann::json j{{"schema_version", f.schema_version}};
  if (!f.algebras.empty()) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [k, v] : f.algebras) o[k] = to_json(v);
    j["algebras"] = std::move(o);
  }
  if (!f.elements.empty()) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [k, v] : f.elements) o[k] = to_json(v);
    j["elements"] = std::move(o);
  }
  if (!f.maps.empty()) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [k, v] : f.maps) o[k] = to_json(v);
    j["maps"] = std::move(o);
  }
  if (!f.pairs.empty()) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [k, v] : f.pairs) {
      o[k] = nlohmann::json{{"phi", to_json(v.first)}, {"psi", to_json(v.second)}};
    }
    j["pairs"] = std::move(o);
  }
  if (!f.triple_systems.empty()) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [k, v] : f.triple_systems) o[k] = to_json(v);
    j["triple_systems"] = std::move(o);
  }
  return j;
}

InstanceFile instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("instance file: expected an object");
  InstanceFile f;
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer()) {
    throw ParseError("instance file: missing schema_version");
  }
  f.schema_version = j["schema_version"].get<int>();
  if (f.schema_version != 1) {
    throw ParseError("instance file: unsupported schema_version " +
                     std::to_string(f.schema_version));
  }
  if (j.contains("algebras")) {
    for (const auto& [k, v] : j["algebras"].items()) f.algebras.emplace(k, algebra_spec_from_json(v));
  }
  if (j.contains("elements")) {
    for (const auto& [k, v] : j["elements"].items()) f.elements.emplace(k, element_from_json(v));
  }
  if (j.contains("maps")) {
    for (const auto& [k, v] : j["maps"].items()) f.maps.emplace(k, linmap_from_json(v));
  }
  if (j.contains("pairs")) {
    for (const auto& [k, v] : j["pairs"].items()) {
      if (!v.is_object() || !v.contains("phi") || !v.contains("psi")) {
        throw ParseError("instance file: pair " + k + " needs phi and psi");
      }
      f.pairs.emplace(k, std::make_pair(linmap_from_json(v["phi"]), linmap_from_json(v["psi"])));
    }
  }
  if (j.contains("triple_systems")) {
    for (const auto& [k, v] : j["triple_systems"].items()) {
      f.triple_systems.emplace(k, triple_system_from_json(v));
    }
  }
  return f;
}

InstanceFile load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance_file(const std::string& path, const InstanceFile& f) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << to_json(f).dump(2) << "\n";
}

}  // namespace pginv
