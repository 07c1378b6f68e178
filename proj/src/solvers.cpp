#include "rangesched/solvers.h"

#include "rangesched/error.h"

namespace rangesched {

std::string_view to_string(Algorithm a) {
  switch (a) {
  case Algorithm::kOrthogonal:
    return "orthogonal";
  case Algorithm::kConvex:
    return "ca";
  case Algorithm::kTsp:
    return "tsp";
  case Algorithm::kIpa:
    return "ipa";
  case Algorithm::kGrid:
    return "grid";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto a : {Algorithm::kOrthogonal, Algorithm::kConvex, Algorithm::kTsp,
                       Algorithm::kIpa, Algorithm::kGrid}) {
    if (name == to_string(a)) {
      return a;
    }
  }
  throw InvalidInput("unknown algorithm '" + std::string(name) + "'");
}

SolveOutcome solve(Algorithm a, const DistanceMatrix& d, const MessageParams& p,
                   const SolveOptions& opts) {
  switch (a) {
  case Algorithm::kOrthogonal: {
    auto base = orthogonal_baseline(d, p);
    return {std::move(base.schedule), base.report_cycle_ns, std::nullopt, 0};
  }
  case Algorithm::kConvex: {
    NodeOrder order = opts.order.value_or(NodeOrder::identity(d.size()));
    Schedule s = convex_delays(d, p, order);
    const double cycle = report_cycle(d, s, p);
    return {std::move(s), cycle, std::move(order), 0};
  }
  case Algorithm::kTsp: {
    auto r = tsp_solve(d, p, opts.tsp);
    return {std::move(r.schedule), r.report_cycle_ns, std::move(r.order), 0};
  }
  case Algorithm::kIpa: {
    auto r = ipa_solve(d, p, opts.ipa);
    const double cycle = report_cycle(d, r.schedule, p);
    return {std::move(r.schedule), cycle, std::nullopt, r.state.adjusting_passes};
  }
  case Algorithm::kGrid: {
    auto r = grid_search(d, p, opts.grid);
    return {std::move(r.schedule), r.report_cycle_ns, std::nullopt, 0};
  }
  }
  throw InvalidInput("unknown algorithm");
}

} // namespace rangesched
