#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rangesched/topology.h"

namespace rangesched {

// Propagation speed of the default medium, 3e8 m/s.
inline constexpr double kSpeedOfLightMPerNs = 0.3;

// Default collision tolerance on summed overlap.
inline constexpr double kDefaultCollisionToleranceNs = 1e-6;

/// Packet duration and propagation speed. The path-equivalent message
/// length L is derived, never stored, so L == mu * tau always holds.
class MessageParams {
public:
  // Throws InvalidInput unless tau > 0 and mu > 0.
  MessageParams(double tau_ns, double mu_m_per_ns = kSpeedOfLightMPerNs);

  double tau_ns() const { return tau_ns_; }
  double mu_m_per_ns() const { return mu_; }
  double length_m() const { return mu_ * tau_ns_; }

  // Same medium, different packet width (used for guard intervals).
  MessageParams with_tau(double tau_ns) const { return {tau_ns, mu_}; }

private:
  double tau_ns_;
  double mu_;
};

/// Per-node transmit delays in nanoseconds, indexed by NodeId.
class Schedule {
public:
  Schedule() = default;

  // Throws InvalidInput on negative or non-finite delays.
  explicit Schedule(std::vector<double> delays_ns);

  // Shifts the delays so that the earliest transmission is at 0.
  static Schedule canonical(std::vector<double> delays_ns);

  std::size_t size() const { return delays_.size(); }
  double operator[](NodeId i) const { return delays_[i]; }
  std::span<const double> delays() const { return delays_; }

  bool is_canonical() const;

private:
  std::vector<double> delays_;
};

// Row-major n×n propagation delays d[k][i] / mu in nanoseconds.
std::vector<double> path_delays(const DistanceMatrix& d, const MessageParams& p);

// Maximum path delay T_D = max(d) / mu + tau.
double max_path_delay(const DistanceMatrix& d, const MessageParams& p);

struct Arrival {
  NodeId sender = 0;
  double start_ns = 0.0;
  double end_ns = 0.0;
};

/// Packet reception windows: entry k lists, for every sender i != k,
/// [Delta_i + d[k][i]/mu, Delta_i + d[k][i]/mu + tau] in sender order.
/// Throws InvalidInput on a size mismatch.
std::vector<std::vector<Arrival>> arrival_intervals(const DistanceMatrix& d,
                                                    const Schedule& s,
                                                    const MessageParams& p);

// Sum over all unordered pairs of the overlap of equal-width windows
// [start, start + width]. Windows that only touch do not overlap.
double pairwise_overlap(std::span<const double> starts_ns, double width_ns);

struct InterferenceReport {
  std::vector<double> per_receiver_overlap_ns;
  double total_overlap_ns = 0.0;
  double fraction_clean = 1.0;
  bool valid = true;
};

// Interference-free fraction 1 - total / (n (n-1) tau), clamped to [0, 1].
double clean_fraction(double total_overlap_ns, std::size_t n, double tau_ns);

/// Collision check of a schedule with unit rectangular pulses.
/// valid <=> total overlap <= tolerance.
InterferenceReport evaluate(const DistanceMatrix& d, const Schedule& s,
                            const MessageParams& p,
                            double tolerance_ns = kDefaultCollisionToleranceNs);

// T_R = max_{i != j} (Delta_i + d[j][i]/mu) + tau.
double report_cycle(const DistanceMatrix& d, const Schedule& s,
                    const MessageParams& p);

/// True iff |d[k][i] - d[k][j]| >= L for every receiver k and distinct
/// senders i, j != k, i.e. all nodes may transmit at once. `tolerance_m`
/// relaxes the comparison for matrices produced by floating-point updates.
bool concurrency_ok(std::span<const double> matrix_m, std::size_t n,
                    const MessageParams& p, double tolerance_m = 0.0);
bool concurrency_ok(const DistanceMatrix& d, const MessageParams& p);

struct BaselineResult {
  Schedule schedule;
  double slot_ns = 0.0;         // T_D
  double report_cycle_ns = 0.0; // N * T_D
};

// Sequential TDMA: Delta_i = i * T_D, T_R = N * T_D.
BaselineResult orthogonal_baseline(const DistanceMatrix& d, const MessageParams& p);

// R_s = R_b * tau / T_R.
double throughput_per_sensor(double report_cycle_ns, const MessageParams& p,
                             double channel_rate_bps);

struct CdmaConfig {
  double channel_rate_bps = 1e9;
  std::size_t code_length = 0; // 0 selects the smallest power of two >= N
};

std::size_t default_code_length(std::size_t n);

// R_s = R_b * tau / (M * T_D). Throws InvalidInput if M < n.
double cdma_throughput(const DistanceMatrix& d, const MessageParams& p,
                       const CdmaConfig& cfg, std::size_t n);

} // namespace rangesched
