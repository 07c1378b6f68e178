#include "rangesched/grid_search.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "rangesched/error.h"

namespace rangesched {

namespace {

constexpr double kGridEps = 1e-9;
constexpr double kPairOverlapTol = 1e-9;

class GridSearcher {
public:
  GridSearcher(const DistanceMatrix& d, const MessageParams& p, const GridSearchConfig& cfg)
      : n_(d.size()), q_(cfg.step_ns), tau_(p.tau_ns()), timing_(cfg.timing),
        delta_(path_delays(d, p)), farthest_(n_, 0.0), values_(n_, 0), delays_(n_, 0.0),
        best_values_(n_, 0) {
    for (NodeId i = 0; i < n_; ++i) {
      for (NodeId j = 0; j < n_; ++j) {
        if (i != j) {
          farthest_[i] = std::max(farthest_[i], delta_[j * n_ + i]);
        }
      }
    }
  }

  bool run(double bound) {
    vmax_ = static_cast<std::size_t>(std::floor(bound / q_ + kGridEps));
    best_ = std::numeric_limits<double>::infinity();
    found_ = false;
    descend(0, -std::numeric_limits<double>::infinity(), 0);
    return found_;
  }

  std::vector<double> best_delays() const {
    std::vector<double> out(n_);
    for (NodeId i = 0; i < n_; ++i) {
      out[i] = static_cast<double>(best_values_[i]) * q_;
    }
    return out;
  }

  double best_cycle() const { return best_; }
  std::size_t leaves() const { return leaves_; }

private:
  bool collide(NodeId i, NodeId j) const {
    for (NodeId k = 0; k < n_; ++k) {
      if (k == i || k == j) {
        continue;
      }
      const double ai = delays_[i] + delta_[k * n_ + i];
      const double aj = delays_[j] + delta_[k * n_ + j];
      if (timing_ == GridTiming::kSampled) {
        const double lo_i = std::floor(ai / q_ + kGridEps);
        const double hi_i = std::floor((ai + tau_) / q_ + kGridEps);
        const double lo_j = std::floor(aj / q_ + kGridEps);
        const double hi_j = std::floor((aj + tau_) / q_ + kGridEps);
        if (!(hi_i <= lo_j || hi_j <= lo_i)) {
          return true;
        }
      } else {
        const double overlap = std::min(ai, aj) + tau_ - std::max(ai, aj);
        if (overlap > kPairOverlapTol) {
          return true;
        }
      }
    }
    return false;
  }

  // `latest` is max over assigned nodes of (Delta_i + farthest_i).
  void descend(NodeId i, double latest, std::size_t zeros) {
    if (i == n_) {
      ++leaves_;
      const double cycle = latest + tau_;
      if (cycle < best_ - kGridEps) {
        best_ = cycle;
        best_values_ = values_;
        found_ = true;
      }
      return;
    }
    const bool must_be_zero = (i + 1 == n_) && zeros == 0;
    const std::size_t top = must_be_zero ? 0 : vmax_;
    for (std::size_t v = 0; v <= top; ++v) {
      const double delay = static_cast<double>(v) * q_;
      const double reach = std::max(latest, delay + farthest_[i]);
      if (reach + tau_ >= best_ - kGridEps) {
        break;
      }
      values_[i] = v;
      delays_[i] = delay;
      bool ok = true;
      for (NodeId j = 0; j < i && ok; ++j) {
        ok = !collide(i, j);
      }
      if (ok) {
        descend(i + 1, reach, zeros + (v == 0 ? 1 : 0));
      }
    }
  }

  std::size_t n_;
  double q_;
  double tau_;
  GridTiming timing_;
  std::vector<double> delta_;
  std::vector<double> farthest_;
  std::vector<std::size_t> values_;
  std::vector<double> delays_;
  std::vector<std::size_t> best_values_;
  std::size_t vmax_ = 0;
  double best_ = 0.0;
  bool found_ = false;
  std::size_t leaves_ = 0;
};

} // namespace

GridSearchResult grid_search(const DistanceMatrix& d, const MessageParams& p,
                             const GridSearchConfig& cfg) {
  if (!(cfg.step_ns > 0.0) || !std::isfinite(cfg.step_ns)) {
    throw InvalidInput("grid step must be positive");
  }
  if (d.size() > cfg.max_nodes) {
    std::ostringstream msg;
    msg << "grid search is limited to " << cfg.max_nodes << " nodes, got " << d.size();
    throw InvalidInput(msg.str());
  }
  double bound = cfg.max_delay_ns.value_or(max_path_delay(d, p));
  if (!(bound >= 0.0) || !std::isfinite(bound)) {
    throw InvalidInput("grid search bound must be nonnegative");
  }
  GridSearcher searcher(d, p, cfg);
  bool extended = false;
  if (!searcher.run(bound)) {
    bound *= 2.0;
    extended = true;
    if (!searcher.run(bound)) {
      std::ostringstream msg;
      msg << "no collision-free grid point within [0, " << bound << "] ns";
      throw SolverError(msg.str());
    }
  }
  return {Schedule(searcher.best_delays()), searcher.best_cycle(), bound, extended,
          searcher.leaves()};
}

} // namespace rangesched
