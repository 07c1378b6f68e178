#pragma once

#include <cstddef>
#include <vector>

#include "rangesched/schedule.h"
#include "rangesched/topology.h"

namespace rangesched {

/// Path-adjusting state.
///
/// `adjusted` is the row-major virtual path matrix: every adjustment adds
/// the same length to a whole column, so adjusted(k, j) always equals
/// original(k, j) + added_m[j]. The diagonal is carried along but never read.
struct IpaState {
  std::size_t n = 0;
  std::vector<double> adjusted;
  std::vector<double> added_m;
  std::size_t passes = 0;            // completed receiver sweeps
  std::size_t adjusting_passes = 0;  // sweeps that changed anything

  double operator()(NodeId k, NodeId j) const { return adjusted[k * n + j]; }
};

IpaState ipa_init(const DistanceMatrix& d);

struct IpaConfig {
  // 0 selects 10 * N^2.
  std::size_t max_iterations = 0;
};

// Lengths closer than this to L count as separated.
inline constexpr double kIpaToleranceM = 1e-9;

/// One full sweep over receivers k = 0..N-1. For each receiver, sender
/// pairs (i, j) with i < j are visited in lexicographic order against the
/// current matrix; when |m[k][i] - m[k][j]| < L the later-indexed sender j
/// gets L - (m[k][j] - m[k][i]) added to its column. Returns the state
/// after the sweep; `adjustments` receives the number of column updates.
IpaState ipa_iterate(IpaState state, const MessageParams& p, std::size_t* adjustments = nullptr);

struct IpaResult {
  Schedule schedule;
  IpaState state;
};

/// Sweeps until one complete sweep makes no adjustment, then converts the
/// added lengths to delays (Delta_i = added_i / mu). Node 0 is never
/// adjusted, so its delay is 0. Throws SolverError if the sweep cap is hit.
IpaResult ipa_solve(const DistanceMatrix& d, const MessageParams& p, const IpaConfig& cfg = {});

} // namespace rangesched
