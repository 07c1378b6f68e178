#include "rangesched/topology.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rangesched/error.h"
#include "rangesched/rng.h"

namespace rangesched {

void validate(const Topology& topo) {
  if (topo.size() < 2) {
    throw InvalidInput("topology needs at least 2 nodes");
  }
  for (std::size_t i = 0; i < topo.size(); ++i) {
    const auto& p = topo.positions[i];
    if (!std::isfinite(p.x_m) || !std::isfinite(p.y_m)) {
      std::ostringstream msg;
      msg << "node " << i << " has a non-finite coordinate";
      throw InvalidInput(msg.str());
    }
  }
}

double DistanceMatrix::max_distance() const {
  return *std::max_element(d_.begin(), d_.end());
}

DistanceMatrix distances(const Topology& topo) {
  validate(topo);
  const std::size_t n = topo.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = k + 1; i < n; ++i) {
      const double dx = topo.positions[k].x_m - topo.positions[i].x_m;
      const double dy = topo.positions[k].y_m - topo.positions[i].y_m;
      const double r = std::hypot(dx, dy);
      d[k * n + i] = r;
      d[i * n + k] = r;
    }
  }
  return DistanceMatrix(n, std::move(d));
}

DistanceMatrix from_distances(std::size_t n, std::vector<double> d) {
  constexpr double kRelTol = 1e-9;
  if (n < 2) {
    throw InvalidInput("distance matrix needs at least 2 nodes");
  }
  if (d.size() != n * n) {
    throw InvalidInput("distance matrix has wrong element count");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (d[k * n + k] != 0.0) {
      std::ostringstream msg;
      msg << "nonzero diagonal at node " << k;
      throw InvalidInput(msg.str());
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double a = d[k * n + i];
      if (!std::isfinite(a) || a < 0.0) {
        std::ostringstream msg;
        msg << "invalid distance d[" << k << "][" << i << "] = " << a;
        throw InvalidInput(msg.str());
      }
      if (i > k) {
        const double b = d[i * n + k];
        if (std::abs(a - b) > kRelTol * std::max(std::abs(a), std::abs(b))) {
          std::ostringstream msg;
          msg << "asymmetric distances between " << k << " and " << i << ": "
              << a << " vs " << b;
          throw InvalidInput(msg.str());
        }
      }
    }
  }
  return DistanceMatrix(n, std::move(d));
}

void validate(const TopologyConfig& cfg) {
  if (cfg.n < 2) {
    throw InvalidInput("topology config: n must be at least 2");
  }
  if (!(cfg.sigma_m > 0.0) || !std::isfinite(cfg.sigma_m)) {
    throw InvalidInput("topology config: sigma must be positive");
  }
  if (!(cfg.outlier_prob >= 0.0 && cfg.outlier_prob <= 1.0)) {
    throw InvalidInput("topology config: outlier_prob must lie in [0, 1]");
  }
  if (cfg.outlier_prob > 0.0 &&
      !(cfg.sigma_outlier_m >= cfg.sigma_m && std::isfinite(cfg.sigma_outlier_m))) {
    throw InvalidInput("topology config: sigma_o must be >= sigma when outliers are enabled");
  }
}

namespace {

// Coordinates and component membership use separate streams.
Topology draw(const TopologyConfig& cfg, bool mixture) {
  Rng coords(derive_seed(cfg.seed, {0}));
  Rng membership(derive_seed(cfg.seed, {1}));
  Topology topo;
  topo.positions.reserve(cfg.n);
  if (mixture) {
    topo.outlier.reserve(cfg.n);
  }
  for (std::size_t i = 0; i < cfg.n; ++i) {
    double scale = cfg.sigma_m;
    if (mixture) {
      const bool out = membership.uniform() < cfg.outlier_prob;
      topo.outlier.push_back(out ? 1 : 0);
      if (out) {
        scale = cfg.sigma_outlier_m;
      }
    }
    const double x = coords.normal();
    const double y = coords.normal();
    topo.positions.push_back({scale * x, scale * y});
  }
  return topo;
}

} // namespace

Topology generate_gaussian(const TopologyConfig& cfg) {
  validate(cfg);
  if (cfg.outlier_prob != 0.0) {
    throw InvalidInput("generate_gaussian: outlier_prob must be 0 (use generate_mixture)");
  }
  return draw(cfg, false);
}

Topology generate_mixture(const TopologyConfig& cfg) {
  validate(cfg);
  return draw(cfg, true);
}

} // namespace rangesched
