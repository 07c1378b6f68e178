#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rangesched/convex.h"
#include "rangesched/schedule.h"
#include "rangesched/topology.h"

namespace rangesched {

/// Asymmetric TSP over transmission slots.
///
/// cost(i, j) is the minimum delay increment when j transmits right after
/// i: max_{k != i,j} (delta_ki - delta_kj) + tau. The diagonal is unused
/// and stored as 0.
class TspInstance {
public:
  TspInstance(std::size_t n, std::vector<double> costs_ns);

  std::size_t size() const { return n_; }
  double operator()(NodeId i, NodeId j) const { return c_[i * n_ + j]; }

private:
  std::size_t n_;
  std::vector<double> c_;
};

// Requires N >= 3 (throws InvalidInput otherwise).
TspInstance cost_matrix(const DistanceMatrix& d, const MessageParams& p);

/// Cyclic tour, stored starting at node 0.
struct Tour {
  std::vector<NodeId> sequence;
  double cost_ns = 0.0;
};

// Cost of the closed tour including the wrap-around edge.
double tour_cost(const TspInstance& inst, const std::vector<NodeId>& sequence);

inline constexpr std::size_t kDefaultExactThreshold = 13;

// Held-Karp dynamic program. Throws InvalidInput if N exceeds `max_nodes`.
Tour solve_exact(const TspInstance& inst, std::size_t max_nodes = kDefaultExactThreshold);

/// Multi-start local search for N >= 4 (throws InvalidInput otherwise).
///
/// Restart 0 starts from nearest-neighbour construction at node 0, later
/// restarts from a randomised nearest-neighbour tour. Each start is
/// improved by Or-opt segment moves (lengths 1..3, orientation kept) and
/// 2-opt segment reversals, both evaluated with the asymmetric costs, until
/// neither finds an improving move. Deterministic for a given seed.
Tour solve_heuristic(const TspInstance& inst, std::uint64_t seed, std::size_t restarts);

struct TspOptions {
  std::size_t exact_threshold = kDefaultExactThreshold;
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
};

// solve_exact() up to the threshold, solve_heuristic() above it.
Tour solve_tour(const TspInstance& inst, const TspOptions& opts);

struct TspSchedule {
  Schedule schedule;
  NodeOrder order;
  std::size_t rotation = 0; // index into tour.sequence of the first sender
  double report_cycle_ns = 0.0;
};

/// Breaks the cycle at each of its N positions, computes the fixed-order
/// delays for the resulting linear order from the TSP costs, and keeps the
/// rotation with the smallest report cycle (ties: smallest first node).
TspSchedule tsp_schedule(const DistanceMatrix& d, const MessageParams& p,
                         const TspInstance& inst, const Tour& tour);

// Full pipeline. N = 2 skips the TSP and uses the identity order.
TspSchedule tsp_solve(const DistanceMatrix& d, const MessageParams& p,
                      const TspOptions& opts = {});

} // namespace rangesched
