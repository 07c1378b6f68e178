#pragma once

#include <cstddef>
#include <optional>

#include "rangesched/schedule.h"
#include "rangesched/topology.h"

namespace rangesched {

/// How the grid search decides whether two packets collide.
enum class GridTiming {
  // Packets are sampled on the same grid as the delays: a packet arriving
  // at s occupies the samples q*m with s < q*m <= s + tau. Two packets
  // collide when they share a sample. Residual true overlap per pair is
  // below one grid step.
  kSampled,
  // Exact interval arithmetic, same rule as evaluate().
  kExact,
};

struct GridSearchConfig {
  double step_ns = 0.1;
  std::optional<double> max_delay_ns; // default: T_D
  std::size_t max_nodes = 5;
  GridTiming timing = GridTiming::kSampled;
};

struct GridSearchResult {
  Schedule schedule;
  double report_cycle_ns = 0.0;
  double bound_ns = 0.0;      // search bound actually used
  bool bound_extended = false;
  std::size_t leaves = 0;     // complete grid points checked
};

/// Exhaustive search over delay vectors on {0, q, 2q, ...} <= bound with at
/// least one delay equal to 0, minimising the report cycle among
/// collision-free points. Ties go to the lexicographically smallest delay
/// vector. Branches whose partial report cycle already reaches the best
/// found so far are cut, which does not change the result.
///
/// If the bound admits no collision-free point it is doubled once
/// (`bound_extended`); if that fails too, SolverError is thrown. Throws
/// InvalidInput for N above cfg.max_nodes or a nonpositive step.
GridSearchResult grid_search(const DistanceMatrix& d, const MessageParams& p,
                             const GridSearchConfig& cfg = {});

} // namespace rangesched
