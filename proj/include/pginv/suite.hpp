#pragma once

#include <string>
#include <vector>

#include "pginv/report.hpp"

namespace pginv {

// One acceptance criterion: a named property-based check at desk scale,
// with every tolerance pinned in code.
struct CriterionOutcome {
  CheckReport report;
  double seconds = 0.0;
};

// Runs every criterion whose name contains `filter` (empty = all).
// Verdicts do not depend on the seed; the seed only moves the samples.
std::vector<CriterionOutcome> run_acceptance(const std::string& filter, std::uint64_t seed);

std::vector<std::string> acceptance_criterion_names();

}  // namespace pginv
