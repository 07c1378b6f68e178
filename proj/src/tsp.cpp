#include "rangesched/tsp.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "rangesched/error.h"
#include "rangesched/rng.h"

namespace rangesched {

TspInstance::TspInstance(std::size_t n, std::vector<double> costs_ns)
    : n_(n), c_(std::move(costs_ns)) {
  if (c_.size() != n_ * n_) {
    throw InvalidInput("TSP cost matrix has wrong element count");
  }
}

TspInstance cost_matrix(const DistanceMatrix& d, const MessageParams& p) {
  const std::size_t n = d.size();
  if (n < 3) {
    throw InvalidInput("TSP cost matrix needs at least 3 nodes");
  }
  const auto delta = path_delays(d, p);
  std::vector<double> c(n * n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i == j) {
        continue;
      }
      double worst = -std::numeric_limits<double>::infinity();
      for (NodeId k = 0; k < n; ++k) {
        if (k != i && k != j) {
          worst = std::max(worst, delta[k * n + i] - delta[k * n + j]);
        }
      }
      c[i * n + j] = worst + p.tau_ns();
    }
  }
  return TspInstance(n, std::move(c));
}

double tour_cost(const TspInstance& inst, const std::vector<NodeId>& sequence) {
  double total = 0.0;
  for (std::size_t a = 0; a < sequence.size(); ++a) {
    total += inst(sequence[a], sequence[(a + 1) % sequence.size()]);
  }
  return total;
}

namespace {

// Held-Karp table size grows as 2^n * n.
constexpr std::size_t kExactHardLimit = 20;

std::vector<NodeId> rotate_to_zero(std::vector<NodeId> seq) {
  const auto it = std::find(seq.begin(), seq.end(), NodeId{0});
  std::rotate(seq.begin(), it, seq.end());
  return seq;
}

} // namespace

Tour solve_exact(const TspInstance& inst, std::size_t max_nodes) {
  const std::size_t n = inst.size();
  if (n > max_nodes) {
    std::ostringstream msg;
    msg << "exact TSP limited to " << max_nodes << " nodes, got " << n;
    throw InvalidInput(msg.str());
  }
  if (n < 2 || n > kExactHardLimit) {
    std::ostringstream msg;
    msg << "exact TSP supports 2.." << kExactHardLimit << " nodes, got " << n;
    throw InvalidInput(msg.str());
  }
  // Node 0 is the fixed start; subsets range over nodes 1..n-1.
  const std::size_t m = n - 1;
  const std::size_t full = (std::size_t{1} << m) - 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> cost((full + 1) * m, kInf);
  std::vector<std::uint8_t> parent((full + 1) * m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    cost[(std::size_t{1} << j) * m + j] = inst(0, j + 1);
    parent[(std::size_t{1} << j) * m + j] = 0;
  }
  for (std::size_t mask = 1; mask <= full; ++mask) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!(mask & (std::size_t{1} << j))) {
        continue;
      }
      const double here = cost[mask * m + j];
      if (here == kInf) {
        continue;
      }
      for (std::size_t nxt = 0; nxt < m; ++nxt) {
        if (mask & (std::size_t{1} << nxt)) {
          continue;
        }
        const std::size_t next_mask = mask | (std::size_t{1} << nxt);
        const double cand = here + inst(j + 1, nxt + 1);
        if (cand < cost[next_mask * m + nxt]) {
          cost[next_mask * m + nxt] = cand;
          parent[next_mask * m + nxt] = static_cast<std::uint8_t>(j + 1);
        }
      }
    }
  }
  double best = kInf;
  std::size_t last = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double cand = cost[full * m + j] + inst(j + 1, 0);
    if (cand < best) {
      best = cand;
      last = j;
    }
  }
  std::vector<NodeId> seq(n);
  std::size_t mask = full;
  std::size_t cur = last;
  for (std::size_t pos = n - 1; pos >= 1; --pos) {
    seq[pos] = cur + 1;
    const std::size_t prev = parent[mask * m + cur];
    mask &= ~(std::size_t{1} << cur);
    if (prev == 0) {
      break;
    }
    cur = prev - 1;
  }
  seq[0] = 0;
  return {seq, tour_cost(inst, seq)};
}

namespace {

std::vector<NodeId> nearest_neighbour(const TspInstance& inst, NodeId start, Rng* rng) {
  const std::size_t n = inst.size();
  std::vector<bool> used(n, false);
  std::vector<NodeId> seq;
  seq.reserve(n);
  seq.push_back(start);
  used[start] = true;
  while (seq.size() < n) {
    const NodeId cur = seq.back();
    // Randomised variant picks among the two cheapest successors.
    NodeId first = n;
    NodeId second = n;
    for (NodeId j = 0; j < n; ++j) {
      if (used[j]) {
        continue;
      }
      if (first == n || inst(cur, j) < inst(cur, first)) {
        second = first;
        first = j;
      } else if (second == n || inst(cur, j) < inst(cur, second)) {
        second = j;
      }
    }
    NodeId pick = first;
    if (rng != nullptr && second != n && rng->uniform() < 0.3) {
      pick = second;
    }
    seq.push_back(pick);
    used[pick] = true;
  }
  return seq;
}

constexpr double kGainEps = 1e-9;

// One sweep of Or-opt moves: segment [i, i+len) relocated between two
// consecutive tour positions, keeping its direction. Returns true if a
// move was applied.
bool or_opt_pass(const TspInstance& inst, std::vector<NodeId>& t) {
  const std::size_t n = t.size();
  bool improved = false;
  for (std::size_t len = 1; len <= 3 && len + 2 <= n; ++len) {
    for (std::size_t i = 0; i < n; ++i) {
      const NodeId before = t[(i + n - 1) % n];
      const NodeId seg_first = t[i];
      const NodeId seg_last = t[(i + len - 1) % n];
      const NodeId after = t[(i + len) % n];
      const double removed = inst(before, seg_first) + inst(seg_last, after) -
                             inst(before, after);
      // Insert between t[p] and t[p+1] for p outside the segment and not
      // equal to `before` (which would restore the same tour).
      for (std::size_t off = len; off < n - 1; ++off) {
        const std::size_t p = (i + off) % n;
        const NodeId a = t[p];
        const NodeId b = t[(p + 1) % n];
        const double added = inst(a, seg_first) + inst(seg_last, b) - inst(a, b);
        if (added - removed < -kGainEps) {
          std::vector<NodeId> seg;
          std::vector<NodeId> rest;
          seg.reserve(len);
          rest.reserve(n - len);
          for (std::size_t q = 0; q < len; ++q) {
            seg.push_back(t[(i + q) % n]);
          }
          for (std::size_t q = len; q < n; ++q) {
            rest.push_back(t[(i + q) % n]);
          }
          // `a` sits at index off - len in `rest`.
          const std::size_t at = off - len + 1;
          rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at), seg.begin(), seg.end());
          t = std::move(rest);
          improved = true;
          break;
        }
      }
      if (improved) {
        return true;
      }
    }
  }
  return false;
}

// One sweep of 2-opt: reverse t[i+1..j]. Path costs along and against
// the tour direction come from prefix sums so each move is O(1).
bool two_opt_pass(const TspInstance& inst, std::vector<NodeId>& t) {
  const std::size_t n = t.size();
  std::vector<double> fwd(n, 0.0);
  std::vector<double> bwd(n, 0.0);
  for (std::size_t x = 1; x < n; ++x) {
    fwd[x] = fwd[x - 1] + inst(t[x - 1], t[x]);
    bwd[x] = bwd[x - 1] + inst(t[x], t[x - 1]);
  }
  for (std::size_t i = 0; i + 2 < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      const std::size_t jn = (j + 1) % n;
      if (jn == i) {
        continue;
      }
      const double old_cost = inst(t[i], t[i + 1]) + (fwd[j] - fwd[i + 1]) + inst(t[j], t[jn]);
      const double new_cost = inst(t[i], t[j]) + (bwd[j] - bwd[i + 1]) + inst(t[i + 1], t[jn]);
      if (new_cost - old_cost < -kGainEps) {
        std::reverse(t.begin() + static_cast<std::ptrdiff_t>(i + 1),
                     t.begin() + static_cast<std::ptrdiff_t>(j + 1));
        return true;
      }
    }
  }
  return false;
}

void local_search(const TspInstance& inst, std::vector<NodeId>& t) {
  while (or_opt_pass(inst, t) || two_opt_pass(inst, t)) {
  }
}

} // namespace

Tour solve_heuristic(const TspInstance& inst, std::uint64_t seed, std::size_t restarts) {
  const std::size_t n = inst.size();
  if (n < 4) {
    throw InvalidInput("heuristic TSP needs at least 4 nodes");
  }
  Rng rng(seed);
  Tour best;
  best.cost_ns = std::numeric_limits<double>::infinity();
  const std::size_t runs = std::max<std::size_t>(1, restarts);
  for (std::size_t r = 0; r < runs; ++r) {
    std::vector<NodeId> t;
    if (r == 0) {
      t = nearest_neighbour(inst, 0, nullptr);
    } else {
      const auto start = static_cast<NodeId>(rng.uniform() * static_cast<double>(n)) % n;
      t = nearest_neighbour(inst, start, &rng);
    }
    local_search(inst, t);
    const double c = tour_cost(inst, t);
    if (c < best.cost_ns - kGainEps) {
      best.sequence = rotate_to_zero(std::move(t));
      best.cost_ns = c;
    }
  }
  best.cost_ns = tour_cost(inst, best.sequence);
  return best;
}

Tour solve_tour(const TspInstance& inst, const TspOptions& opts) {
  if (inst.size() <= opts.exact_threshold || inst.size() < 4) {
    return solve_exact(inst, std::max(opts.exact_threshold, inst.size()));
  }
  return solve_heuristic(inst, opts.seed, opts.restarts);
}

TspSchedule tsp_schedule(const DistanceMatrix& d, const MessageParams& p,
                         const TspInstance& inst, const Tour& tour) {
  const std::size_t n = d.size();
  if (tour.sequence.size() != n || inst.size() != n) {
    throw InvalidInput("tour size does not match the distance matrix");
  }
  NodeOrder{tour.sequence}; // validates the permutation
  const double mu = p.mu_m_per_ns();
  // Latest arrival offset of each sender over all receivers.
  std::vector<double> farthest(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i != j) {
        farthest[i] = std::max(farthest[i], d(j, i) / mu);
      }
    }
  }
  std::size_t best_rot = 0;
  double best_cycle = std::numeric_limits<double>::infinity();
  std::vector<double> delays(n);
  for (std::size_t rot = 0; rot < n; ++rot) {
    double prev = 0.0;
    double cycle = farthest[tour.sequence[rot]];
    for (std::size_t pos = 1; pos < n; ++pos) {
      const NodeId a = tour.sequence[(rot + pos - 1) % n];
      const NodeId b = tour.sequence[(rot + pos) % n];
      prev = std::max(0.0, prev + inst(a, b));
      cycle = std::max(cycle, prev + farthest[b]);
    }
    cycle += p.tau_ns();
    const bool better = cycle < best_cycle ||
                        (cycle == best_cycle && tour.sequence[rot] < tour.sequence[best_rot]);
    if (better) {
      best_cycle = cycle;
      best_rot = rot;
    }
  }
  std::vector<NodeId> order(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    order[pos] = tour.sequence[(best_rot + pos) % n];
  }
  double prev = 0.0;
  std::fill(delays.begin(), delays.end(), 0.0);
  for (std::size_t pos = 1; pos < n; ++pos) {
    prev = std::max(0.0, prev + inst(order[pos - 1], order[pos]));
    delays[order[pos]] = prev;
  }
  Schedule schedule(std::move(delays));
  const double cycle = report_cycle(d, schedule, p);
  return {std::move(schedule), NodeOrder(std::move(order)), best_rot, cycle};
}

TspSchedule tsp_solve(const DistanceMatrix& d, const MessageParams& p, const TspOptions& opts) {
  if (d.size() == 2) {
    auto order = NodeOrder::identity(2);
    Schedule s = convex_delays(d, p, order);
    const double cycle = report_cycle(d, s, p);
    return {std::move(s), std::move(order), 0, cycle};
  }
  const TspInstance inst = cost_matrix(d, p);
  const Tour tour = solve_tour(inst, opts);
  return tsp_schedule(d, p, inst, tour);
}

} // namespace rangesched
