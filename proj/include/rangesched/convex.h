#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rangesched/schedule.h"
#include "rangesched/topology.h"

namespace rangesched {

/// Transmission order: position -> node. Always a permutation of 0..N-1.
class NodeOrder {
public:
  // Throws InvalidInput if `order` is not a permutation.
  explicit NodeOrder(std::vector<NodeId> order);

  static NodeOrder identity(std::size_t n);

  std::size_t size() const { return order_.size(); }
  NodeId operator[](std::size_t pos) const { return order_[pos]; }
  std::span<const NodeId> nodes() const { return order_; }

  friend bool operator==(const NodeOrder&, const NodeOrder&) = default;

private:
  std::vector<NodeId> order_;
};

/// Smallest delays for a fixed transmission order.
///
/// The first node in the order transmits at 0. Each following node slides
/// left until it would either start before 0 or overlap, at some receiver
/// other than the two of them, the packet of the node just before it:
///
///   Delta_(i+1) = max{0, Delta_(i) + max_{k != (i),(i+1)} (delta_k(i) - delta_k(i+1)) + tau}
///
/// With two nodes the inner max is empty and the second delay is 0.
Schedule convex_delays(const DistanceMatrix& d, const MessageParams& p,
                       const NodeOrder& order);

struct OrderedSchedule {
  NodeOrder order;
  Schedule schedule;
  double report_cycle_ns = 0.0;
};

// Lowest report cycle among `orders`; ties keep the earliest candidate.
// Throws InvalidInput on an empty list.
OrderedSchedule best_over_orders(const DistanceMatrix& d, const MessageParams& p,
                                 std::span<const NodeOrder> orders);

// All n! orders in lexicographic order. Intended for n <= 8.
std::vector<NodeOrder> all_orders(std::size_t n);

} // namespace rangesched
