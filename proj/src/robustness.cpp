#include "rangesched/robustness.h"

#include <algorithm>
#include <numeric>
#include <cmath>
#include <numbers>
#include <vector>

#include "rangesched/error.h"
#include "rangesched/rng.h"
#include "rangesched/special_functions.h"

namespace rangesched {

void validate(const RobustnessConfig& cfg) {
  if (!(cfg.sigma_e_ns >= 0.0) || !std::isfinite(cfg.sigma_e_ns)) {
    throw InvalidInput("sigma_e must be nonnegative");
  }
  if (cfg.p_target && !(*cfg.p_target > 0.0 && *cfg.p_target < 1.0)) {
    throw InvalidInput("p_target must lie in (0, 1)");
  }
  if (cfg.trials == 0) {
    throw InvalidInput("trials must be at least 1");
  }
}

double guard_interval(double sigma_e_ns, double p_target) {
  if (!(p_target > 0.0 && p_target < 1.0)) {
    throw InvalidInput("p_target must lie in (0, 1)");
  }
  if (!(sigma_e_ns >= 0.0)) {
    throw InvalidInput("sigma_e must be nonnegative");
  }
  return std::numbers::sqrt2 * sigma_e_ns * erfc_inv(2.0 * (1.0 - p_target));
}

GuardedParams guarded(const MessageParams& base, const RobustnessConfig& cfg) {
  validate(cfg);
  const double eps = cfg.p_target ? guard_interval(cfg.sigma_e_ns, *cfg.p_target) : 0.0;
  return {base, eps};
}

FractionStats jitter_fraction(const DistanceMatrix& d, const Schedule& schedule,
                              const MessageParams& p, const RobustnessConfig& cfg) {
  validate(cfg);
  if (schedule.size() != d.size()) {
    throw InvalidInput("schedule size does not match the distance matrix");
  }
  const std::size_t n = d.size();
  const auto delta = path_delays(d, p);
  std::vector<double> starts;
  starts.reserve(n - 1);
  std::vector<double> fs(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng rng(derive_seed(cfg.seed, {t}));
    double overlap = 0.0;
    for (NodeId k = 0; k < n; ++k) {
      starts.clear();
      for (NodeId i = 0; i < n; ++i) {
        if (i != k) {
          starts.push_back(schedule[i] + delta[k * n + i] + cfg.sigma_e_ns * rng.normal());
        }
      }
      overlap += pairwise_overlap(starts, p.tau_ns());
    }
    fs[t] = overlap <= kDefaultCollisionToleranceNs ? 1.0 : clean_fraction(overlap, n, p.tau_ns());
  }
  const double trials = static_cast<double>(cfg.trials);
  FractionStats stats;
  stats.mean = std::accumulate(fs.begin(), fs.end(), 0.0) / trials;
  if (cfg.trials > 1) {
    double ss = 0.0;
    for (const double f : fs) {
      ss += (f - stats.mean) * (f - stats.mean);
    }
    stats.stderr_mean = std::sqrt(ss / (trials - 1.0) / trials);
  }
  return stats;
}

double adjacent_clear_probability(double sigma_e_ns, double gap_ns) {
  if (sigma_e_ns == 0.0) {
    return gap_ns >= 0.0 ? 1.0 : 0.0;
  }
  return 1.0 - 0.5 * erfc(gap_ns / (std::numbers::sqrt2 * sigma_e_ns));
}

double adjacent_clear_rate(double sigma_e_ns, double gap_ns, std::size_t draws,
                           std::uint64_t seed) {
  if (draws == 0) {
    throw InvalidInput("draws must be at least 1");
  }
  Rng rng(seed);
  std::size_t clear = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    // The later packet starts gap_ns after the earlier one ends.
    if (gap_ns + sigma_e_ns * rng.normal() >= 0.0) {
      ++clear;
    }
  }
  return static_cast<double>(clear) / static_cast<double>(draws);
}

double crlb_toa_variance(double snr, double beta_hz) {
  if (!(snr > 0.0) || !(beta_hz > 0.0)) {
    throw InvalidInput("SNR and effective bandwidth must be positive");
  }
  return 1.0 / (8.0 * std::numbers::pi * std::numbers::pi * snr * beta_hz * beta_hz);
}

} // namespace rangesched
