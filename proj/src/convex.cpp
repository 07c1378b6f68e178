#include "rangesched/convex.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "rangesched/error.h"

namespace rangesched {

NodeOrder::NodeOrder(std::vector<NodeId> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (const auto v : order_) {
    if (v >= order_.size() || seen[v]) {
      std::ostringstream msg;
      msg << "node order is not a permutation of 0.." << order_.size() - 1;
      throw InvalidInput(msg.str());
    }
    seen[v] = true;
  }
}

NodeOrder NodeOrder::identity(std::size_t n) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  return NodeOrder(std::move(order));
}

Schedule convex_delays(const DistanceMatrix& d, const MessageParams& p,
                       const NodeOrder& order) {
  const std::size_t n = d.size();
  if (order.size() != n) {
    throw InvalidInput("node order size does not match the distance matrix");
  }
  const double mu = p.mu_m_per_ns();
  std::vector<double> delays(n, 0.0);
  double prev_delay = 0.0;
  for (std::size_t pos = 1; pos < n; ++pos) {
    const NodeId prev = order[pos - 1];
    const NodeId next = order[pos];
    double worst = -std::numeric_limits<double>::infinity();
    for (NodeId k = 0; k < n; ++k) {
      if (k != prev && k != next) {
        worst = std::max(worst, (d(k, prev) - d(k, next)) / mu);
      }
    }
    const double delay = std::max(0.0, prev_delay + worst + p.tau_ns());
    delays[next] = delay;
    prev_delay = delay;
  }
  return Schedule(std::move(delays));
}

OrderedSchedule best_over_orders(const DistanceMatrix& d, const MessageParams& p,
                                 std::span<const NodeOrder> orders) {
  if (orders.empty()) {
    throw InvalidInput("best_over_orders needs at least one order");
  }
  std::size_t best = 0;
  Schedule best_schedule = convex_delays(d, p, orders[0]);
  double best_cycle = report_cycle(d, best_schedule, p);
  for (std::size_t c = 1; c < orders.size(); ++c) {
    Schedule s = convex_delays(d, p, orders[c]);
    const double cycle = report_cycle(d, s, p);
    if (cycle < best_cycle) {
      best = c;
      best_cycle = cycle;
      best_schedule = std::move(s);
    }
  }
  return {orders[best], std::move(best_schedule), best_cycle};
}

std::vector<NodeOrder> all_orders(std::size_t n) {
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  std::vector<NodeOrder> out;
  do {
    out.emplace_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

} // namespace rangesched
