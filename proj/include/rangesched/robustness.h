#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "rangesched/schedule.h"
#include "rangesched/topology.h"

namespace rangesched {

/// Jitter model: every packet arrival is shifted by an independent
/// Normal(0, sigma_e^2) offset that lumps clock and range errors together.
struct RobustnessConfig {
  double sigma_e_ns = 0.0;
  std::optional<double> p_target; // nullopt: schedule without a guard
  std::size_t trials = 100;
  std::uint64_t seed = 1;
};

// Throws InvalidInput on sigma_e < 0, p_target outside (0, 1) or zero trials.
void validate(const RobustnessConfig& cfg);

// epsilon = sqrt(2) * sigma_e * erfc^-1(2 (1 - P)). Requires 0 < P < 1.
double guard_interval(double sigma_e_ns, double p_target);

/// Message parameters for scheduling with a guard interval: the solvers see
/// tau' = tau + epsilon while packets on air still last tau.
struct GuardedParams {
  MessageParams base;
  double epsilon_ns = 0.0;

  MessageParams for_scheduling() const { return base.with_tau(base.tau_ns() + epsilon_ns); }
};

GuardedParams guarded(const MessageParams& base, const RobustnessConfig& cfg);

struct FractionStats {
  double mean = 1.0;
  double stderr_mean = 0.0;
};

/// Monte-Carlo interference-free fraction F of `schedule` when packets of
/// width p.tau_ns() arrive with i.i.d. Normal(0, sigma_e^2) offsets.
/// Trial t draws from the stream derive_seed(cfg.seed, {t}), so results do
/// not depend on evaluation order.
FractionStats jitter_fraction(const DistanceMatrix& d, const Schedule& schedule,
                              const MessageParams& p, const RobustnessConfig& cfg);

// P(two adjacent packets separated by `gap_ns` stay apart) when the later
// one is shifted by Normal(0, sigma_e^2): 1 - erfc(gap / (sqrt(2) sigma_e)) / 2.
double adjacent_clear_probability(double sigma_e_ns, double gap_ns);

// Simulated counterpart of adjacent_clear_probability().
double adjacent_clear_rate(double sigma_e_ns, double gap_ns, std::size_t draws,
                           std::uint64_t seed);

// TOA Cramer-Rao bound 1 / (8 pi^2 SNR beta^2) in s^2. SNR is linear,
// beta is the effective bandwidth in Hz. Throws on nonpositive inputs.
double crlb_toa_variance(double snr, double beta_hz);

} // namespace rangesched
