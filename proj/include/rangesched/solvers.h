#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rangesched/convex.h"
#include "rangesched/grid_search.h"
#include "rangesched/ipa.h"
#include "rangesched/schedule.h"
#include "rangesched/tsp.h"

namespace rangesched {

enum class Algorithm { kOrthogonal, kConvex, kTsp, kIpa, kGrid };

// "orthogonal", "ca", "tsp", "ipa", "grid".
std::string_view to_string(Algorithm a);
// Throws InvalidInput on an unknown name.
Algorithm parse_algorithm(std::string_view name);

struct SolveOptions {
  std::optional<NodeOrder> order; // CA only; identity when absent
  TspOptions tsp;
  IpaConfig ipa;
  GridSearchConfig grid;
};

struct SolveOutcome {
  Schedule schedule;
  // Report cycle of the schedule; for the orthogonal baseline the
  // slot-based N * T_D instead.
  double report_cycle_ns = 0.0;
  std::optional<NodeOrder> order;  // CA and TSP
  std::size_t iterations = 0;      // IPA adjusting sweeps
};

SolveOutcome solve(Algorithm a, const DistanceMatrix& d, const MessageParams& p,
                   const SolveOptions& opts = {});

} // namespace rangesched
