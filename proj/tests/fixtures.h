#pragma once

#include <cmath>
#include <vector>

#include "rangesched/schedule.h"
#include "rangesched/topology.h"

namespace fixtures {

// Nodes A, B, C with d_AB = 9.5, d_BC = 11, d_AC = 10.5 m.
inline rangesched::DistanceMatrix three_node() {
  return rangesched::from_distances(3, {0.0, 9.5, 10.5,  //
                                        9.5, 0.0, 11.0,  //
                                        10.5, 11.0, 0.0});
}

inline rangesched::MessageParams three_node_params() { return rangesched::MessageParams(10.0, 0.3); }

inline rangesched::DistanceMatrix equilateral(double side) {
  return rangesched::from_distances(3, {0.0, side, side, side, 0.0, side, side, side, 0.0});
}

inline rangesched::DistanceMatrix gaussian_instance(std::size_t n, std::uint64_t seed,
                                                    double sigma = 5.0) {
  rangesched::TopologyConfig cfg;
  cfg.n = n;
  cfg.sigma_m = sigma;
  cfg.seed = seed;
  return rangesched::distances(rangesched::generate_gaussian(cfg));
}

inline rangesched::DistanceMatrix mixture_instance(std::size_t n, std::uint64_t seed) {
  rangesched::TopologyConfig cfg;
  cfg.n = n;
  cfg.sigma_m = 5.0;
  cfg.sigma_outlier_m = 30.0;
  cfg.outlier_prob = 1.0 / 3.0;
  cfg.seed = seed;
  return rangesched::distances(rangesched::generate_mixture(cfg));
}

// O(N^3) brute-force overlap straight from the pairwise definition.
inline double brute_total_overlap(const rangesched::DistanceMatrix& d,
                                  const rangesched::Schedule& s,
                                  const rangesched::MessageParams& p) {
  const std::size_t n = d.size();
  const double tau = p.tau_ns();
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (i == k || j == k) {
          continue;
        }
        const double a = s[i] + d(k, i) / p.mu_m_per_ns();
        const double b = s[j] + d(k, j) / p.mu_m_per_ns();
        total += std::max(0.0, std::min(a, b) + tau - std::max(a, b));
      }
    }
  }
  return total;
}

// max_{i != j} (Delta_i + d_ji / mu) + tau.
inline double brute_report_cycle(const rangesched::DistanceMatrix& d,
                                 const rangesched::Schedule& s,
                                 const rangesched::MessageParams& p) {
  double best = -1e300;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (i != j) {
        best = std::max(best, s[i] + d(j, i) / p.mu_m_per_ns());
      }
    }
  }
  return best + p.tau_ns();
}

} // namespace fixtures
