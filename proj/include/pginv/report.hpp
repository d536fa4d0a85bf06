#pragma once

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace pginv {

enum class Verdict { pass, fail, indeterminate, hypothesis_not_met };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

// Structured result of a single check. `rule` states the identity or
// property that was verified, in plain mathematical notation; `witnesses`
// carries serialized elements or indices that exhibit a failure.
struct CheckReport {
  std::string check_name;
  Verdict verdict = Verdict::pass;
  std::map<std::string, double> residuals;
  nlohmann::json witnesses = nlohmann::json::object();
  std::string rule;
  std::optional<std::int64_t> seed;

  double max_residual() const {
    double m = 0.0;
    for (const auto& [k, v] : residuals) m = std::max(m, v);
    return m;
  }
  bool passed() const { return verdict == Verdict::pass; }
};

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
    case Verdict::hypothesis_not_met: return "hypothesis-not-met";
  }
  return "fail";
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "indeterminate") return Verdict::indeterminate;
  if (s == "hypothesis-not-met") return Verdict::hypothesis_not_met;
  throw std::invalid_argument("unknown verdict: " + s);
}

}  // namespace pginv
