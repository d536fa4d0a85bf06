#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pginv/generators.hpp"
#include "pginv/pg.hpp"
#include "pginv/serialize.hpp"
#include "pginv/suite.hpp"
#include "pginv/triples.hpp"

namespace {

using namespace pginv;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitSemanticMismatch = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PGINV_SEED")) {
    return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
  }
  return 12345;
}

void print_reports_text(const std::vector<CheckReport>& reports) {
  for (const CheckReport& r : reports) {
    std::cout << (r.passed() ? "PASS" : (r.verdict == Verdict::hypothesis_not_met
                                             ? "SKIP"
                                             : (r.verdict == Verdict::indeterminate ? "????"
                                                                                    : "FAIL")))
              << "  " << r.check_name;
    if (!r.residuals.empty()) {
      std::cout << "  (";
      bool first = true;
      for (const auto& [k, v] : r.residuals) {
        if (!first) std::cout << ", ";
        std::cout << k << " = " << std::setprecision(4) << std::scientific << v;
        first = false;
      }
      std::cout << ")" << std::defaultfloat;
    }
    std::cout << "\n";
  }
}

void print_reports(const std::vector<CheckReport>& reports, bool as_json,
                   std::uint64_t seed) {
  if (as_json) {
    nlohmann::json j{{"schema_version", 1}, {"seed", seed}};
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckReport& r : reports) arr.push_back(to_json(r));
    j["reports"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
  } else {
    print_reports_text(reports);
  }
}

bool all_pass(const std::vector<CheckReport>& reports) {
  for (const CheckReport& r : reports) {
    if (r.verdict == Verdict::fail || r.verdict == Verdict::indeterminate) return false;
  }
  return true;
}

int cmd_check(const std::string& path, double tol, bool as_json, std::uint64_t seed) {
  const InstanceFile file = load_instance_file(path);
  std::vector<CheckReport> reports;

  for (const auto& [name, maps] : file.pairs) {
    const PgPair pair = check_pair(maps.first, maps.second);
    CheckReport pr;
    pr.check_name = "check_pair/" + name;
    pr.rule = "Phi(aba) = Phi(a)Psi(b)Phi(a) and Psi(aba) = Psi(a)Phi(b)Psi(a)";
    pr.residuals["phi_direction"] = pair.residual_phi;
    pr.residuals["psi_direction"] = pair.residual_psi;
    pr.verdict = pair.max_residual() <= tol ? Verdict::pass : Verdict::fail;
    reports.push_back(pr);
    if (pr.passed()) {
      CheckReport ident = verify_pair_identities(pair, tol);
      ident.check_name = "pair_identities/" + name;
      reports.push_back(ident);
      CheckReport suite = contractivity_suite(pair, std::min(tol, 1e-6), 24, seed);
      suite.check_name = "contractivity_suite/" + name;
      reports.push_back(suite);
    }
  }

  for (const auto& [name, map] : file.maps) {
    const SolveResult sol = solve_pg(map);
    CheckReport sr;
    sr.check_name = "pg_exists/" + name;
    sr.rule = "least-squares feasibility of a pg-inverse";
    sr.residuals["solver_residual"] = sol.residual;
    sr.residuals["system_residual"] = sol.system_residual;
    sr.verdict = sol.verdict;
    if (sol.verdict == Verdict::fail) sr.witnesses["verdict"] = "no pg-inverse";
    reports.push_back(sr);
  }

  print_reports(reports, as_json, seed);
  return all_pass(reports) ? kExitPass : kExitCheckFailure;
}

int cmd_solve(const std::string& path, const std::string& map_name, bool triple, double tol,
              bool as_json, const std::string& out_path, std::uint64_t seed) {
  const InstanceFile file = load_instance_file(path);
  if (file.maps.empty()) throw ParseError("solve: the instance file contains no maps");
  std::string chosen = map_name;
  if (chosen.empty()) {
    chosen = file.maps.begin()->first;
  } else if (!file.maps.count(chosen)) {
    throw ParseError("solve: no map named " + chosen);
  }
  const LinMap& phi = file.maps.at(chosen);

  CheckReport rep;
  rep.seed = static_cast<std::int64_t>(seed);
  LinMap psi_out = LinMap::zero(phi.domain, phi.codomain);
  if (triple) {
    const TripleSolveResult sol = solve_triple_pg(TripleMap::from_linmap(phi), tol);
    rep.check_name = "solve_triple_pg/" + chosen;
    rep.rule = "least-squares feasibility of Phi{a,b,c} = {Phi(a), Psi(b), Phi(c)}";
    rep.residuals["solver_residual"] = sol.residual;
    rep.residuals["system_residual"] = sol.system_residual;
    rep.residuals["system_rows"] = sol.system_rows;
    rep.residuals["system_cols"] = sol.system_cols;
    rep.verdict = sol.verdict;
    psi_out = LinMap(phi.domain, phi.codomain, sol.psi.matrix);
  } else {
    const SolveResult sol = solve_pg(phi, tol);
    rep.check_name = "solve_pg/" + chosen;
    rep.rule = "least-squares feasibility of Phi(aba) = Phi(a)Psi(b)Phi(a)";
    rep.residuals["solver_residual"] = sol.residual;
    rep.residuals["system_residual"] = sol.system_residual;
    rep.residuals["system_rows"] = sol.system_rows;
    rep.residuals["system_cols"] = sol.system_cols;
    rep.verdict = sol.verdict;
    psi_out = sol.psi;
  }

  if (!out_path.empty() && rep.verdict == Verdict::pass) {
    InstanceFile out;
    out.maps.emplace("psi", psi_out);
    save_instance_file(out_path, out);
  }
  if (rep.verdict == Verdict::fail) rep.witnesses["verdict"] = "no pg-inverse (infeasible)";

  print_reports({rep}, as_json, seed);
  return rep.verdict == Verdict::pass ? kExitPass : kExitCheckFailure;
}

std::vector<int> parse_blocks(const std::string& blocks) {
  std::vector<int> sizes;
  std::stringstream ss(blocks);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      sizes.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ParseError("gen: invalid block list '" + blocks + "'");
    }
  }
  if (sizes.empty()) throw ParseError("gen: empty block list");
  for (int n : sizes) {
    if (n < 1) throw ParseError("gen: block sizes must be positive");
  }
  return sizes;
}

int cmd_gen(const std::string& kind, const std::string& blocks, std::uint64_t seed,
            const std::string& out_path) {
  InstanceFile out;
  if (kind == "jordan-hom") {
    const AlgebraSpec spec(parse_blocks(blocks));
    out.maps.emplace("jordan_hom", generate_jordan_hom(spec, seed).map);
  } else if (kind == "normalized-pair") {
    const AlgebraSpec spec(parse_blocks(blocks));
    const PairKind kinds[4] = {PairKind::star, PairKind::invertible_unit, PairKind::corner,
                               PairKind::general};
    const PgPair pair = generate_normalized_pair(spec, kinds[seed % 4], seed);
    out.pairs.emplace("pair", std::make_pair(pair.phi, pair.psi));
  } else if (kind == "counterexample") {
    out.maps.emplace("counterexample", weak_preserver_counterexample());
  } else if (kind == "tripotent") {
    const AlgebraSpec spec(parse_blocks(blocks));
    const TripleSystem sys = TripleSystem::cstar(spec);
    const TripleElement e = random_tripotent(sys, seed);
    out.triple_systems.emplace("system", sys);
    out.elements.emplace("tripotent", algebra_elem_of(sys, e));
  } else {
    throw ParseError("gen: unknown kind '" + kind +
                     "' (expected jordan-hom | normalized-pair | counterexample | tripotent)");
  }

  if (out_path.empty()) {
    std::cout << to_json(out).dump(2) << "\n";
  } else {
    save_instance_file(out_path, out);
  }
  return kExitPass;
}

int cmd_suite(const std::string& filter, std::uint64_t seed, bool as_json) {
  const std::vector<CriterionOutcome> outcomes = run_acceptance(filter, seed);
  if (as_json) {
    nlohmann::json j{{"schema_version", 1}, {"seed", seed}};
    nlohmann::json arr = nlohmann::json::array();
    for (const CriterionOutcome& o : outcomes) {
      nlohmann::json item = to_json(o.report);
      item["seconds"] = o.seconds;
      arr.push_back(std::move(item));
    }
    j["criteria"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
  } else {
    double total = 0.0;
    for (const CriterionOutcome& o : outcomes) {
      total += o.seconds;
      std::cout << (o.report.passed() ? "PASS" : "FAIL") << "  " << std::left << std::setw(32)
                << o.report.check_name << std::right << std::fixed << std::setprecision(2)
                << std::setw(7) << o.seconds << "s  ";
      bool first = true;
      for (const auto& [k, v] : o.report.residuals) {
        if (!first) std::cout << ", ";
        std::cout << k << " = " << std::setprecision(3) << std::scientific << v
                  << std::defaultfloat;
        first = false;
      }
      std::cout << "\n";
    }
    std::cout << "total " << std::fixed << std::setprecision(2) << total << "s, seed " << seed
              << "\n"
              << std::defaultfloat;
  }
  for (const CriterionOutcome& o : outcomes) {
    if (!o.report.passed()) return kExitCheckFailure;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for pointwise-generalized-inverses of maps between "
               "finite-dimensional C*-algebras and matrix JB*-triples"};
  app.require_subcommand(1);

  std::string file, map_name, out_path, kind, blocks = "2", filter;
  double tol = kDefaultTol;
  std::uint64_t seed = default_seed();
  bool as_json = false, triple = false;

  CLI::App* check = app.add_subcommand("check", "run pair checks on an instance file");
  check->add_option("file", file, "instance JSON file")->required();
  check->add_option("--tol", tol, "tolerance (default 1e-8)");
  check->add_flag("--json", as_json, "machine-readable report");
  check->add_option("--seed", seed, "sample seed");

  CLI::App* solve = app.add_subcommand("solve", "solve for a pg-inverse of a map");
  solve->add_option("file", file, "instance JSON file")->required();
  solve->add_option("--map", map_name, "map name inside the file");
  solve->add_flag("--triple", triple, "solve in the JB*-triple sense");
  solve->add_option("--tol", tol, "tolerance (default 1e-8)");
  solve->add_flag("--json", as_json, "machine-readable report");
  solve->add_option("--out", out_path, "write the solved map to this file");
  solve->add_option("--seed", seed, "sample seed");

  CLI::App* gen = app.add_subcommand("gen", "generate a seeded instance file");
  gen->add_option("kind", kind,
                  "jordan-hom | normalized-pair | counterexample | tripotent")
      ->required();
  gen->add_option("--blocks", blocks, "block sizes, e.g. 2,3");
  gen->add_option("--seed", seed, "generation seed");
  gen->add_option("--out", out_path, "output file (stdout when omitted)");

  CLI::App* suite = app.add_subcommand("suite", "run the acceptance matrix");
  suite->add_option("--filter", filter, "run only criteria whose name contains this");
  suite->add_option("--seed", seed, "sample seed");
  suite->add_flag("--json", as_json, "machine-readable report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(file, tol, as_json, seed);
    if (solve->parsed()) return cmd_solve(file, map_name, triple, tol, as_json, out_path, seed);
    if (gen->parsed()) return cmd_gen(kind, blocks, seed, out_path);
    if (suite->parsed()) return cmd_suite(filter, seed, as_json);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ArgumentError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ShapeError& e) {
    std::cerr << "mismatch: " << e.what() << "\n";
    return kExitSemanticMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitInputError;
}
