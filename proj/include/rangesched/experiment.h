#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rangesched/ipa.h"
#include "rangesched/polyfit.h"
#include "rangesched/schedule.h"
#include "rangesched/solvers.h"
#include "rangesched/topology.h"
#include "rangesched/tsp.h"

namespace rangesched {

enum class Family { kGaussian, kMixture };

struct TopologyFamily {
  Family family = Family::kGaussian;
  double sigma_m = 5.0;
  double sigma_outlier_m = 30.0;
  double outlier_prob = 1.0 / 3.0;
};

// "orthogonal", "ca", "tsp", "ipa" or "cdma".
enum class SweepAlgorithm { kOrthogonal, kConvex, kTsp, kIpa, kCdma };

std::string_view to_string(SweepAlgorithm a);
SweepAlgorithm parse_sweep_algorithm(std::string_view name);

struct SweepConfig {
  std::vector<std::size_t> n_values;
  std::size_t trials = 32;
  TopologyFamily topology;
  std::vector<SweepAlgorithm> algorithms;
  double tau_ns = 10.0;
  double mu_m_per_ns = kSpeedOfLightMPerNs;
  double channel_rate_bps = 1e9;
  std::size_t cdma_code_length = 0; // 0: next power of two >= N
  TspOptions tsp;
  IpaConfig ipa;
  std::uint64_t seed = 1;
  std::size_t threads = 0; // 0: hardware concurrency
};

void validate(const SweepConfig& cfg);

struct SweepRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  SweepAlgorithm algorithm = SweepAlgorithm::kOrthogonal;
  double t_r_ns = 0.0;
  double r_s_bps = 0.0;
  std::int64_t solve_time_ticks = 0; // steady clock nanoseconds, not reproducible
};

struct SweepResult {
  std::vector<SweepRecord> records; // sorted by (n, trial, algorithm)
};

// The instance shared by every algorithm at (n, trial).
DistanceMatrix sweep_instance(const SweepConfig& cfg, std::size_t n, std::size_t trial);

/// Paired Monte-Carlo sweep. Each emitted schedule is checked with
/// evaluate(); an invalid one aborts with SolverError.
SweepResult run_sweep(const SweepConfig& cfg);

// run_sweep with the mixture family forced.
SweepResult run_outlier_sweep(SweepConfig cfg);

struct SweepSummaryRow {
  std::size_t n = 0;
  SweepAlgorithm algorithm = SweepAlgorithm::kOrthogonal;
  double mean_t_r_ns = 0.0;
  double mean_r_s_bps = 0.0;
  double mean_ticks = 0.0;
};

std::vector<SweepSummaryRow> summarize(const SweepResult& result);

// Arithmetic mean of t_r over trials; throws InvalidInput if absent.
double mean_report_cycle(const SweepResult& result, std::size_t n, SweepAlgorithm a);

void write_sweep_csv(std::ostream& out, const SweepResult& result, bool with_ticks = true);
void write_summary_csv(std::ostream& out, const std::vector<SweepSummaryRow>& rows);

// Mean R_s per N for each configured algorithm plus CDMA.
std::vector<SweepSummaryRow> run_cdma_compare(SweepConfig cfg);
void write_cdma_csv(std::ostream& out, const std::vector<SweepSummaryRow>& rows);

struct RobustnessSweepConfig {
  std::size_t n = 20;
  std::size_t topologies = 100;
  TopologyFamily topology{Family::kGaussian, 5.0, 30.0, 0.0};
  std::vector<double> sigma_e_values;
  std::vector<std::optional<double>> p_targets; // nullopt: no guard
  std::size_t trials = 20; // jitter draws per topology
  Algorithm algorithm = Algorithm::kIpa;
  double tau_ns = 10.0;
  double mu_m_per_ns = kSpeedOfLightMPerNs;
  SolveOptions solve;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
};

void validate(const RobustnessSweepConfig& cfg);

struct RobustnessRow {
  double sigma_e_ns = 0.0;
  std::optional<double> p_target;
  double mean_f = 1.0;
  double stderr_f = 0.0; // across topologies
};

/// Rows ordered by (p_target as given, sigma_e as given). Jitter draws for a
/// topology are shared across all sigma_e and p_target values.
std::vector<RobustnessRow> run_robustness(const RobustnessSweepConfig& cfg);
void write_robustness_csv(std::ostream& out, const std::vector<RobustnessRow>& rows);

struct BenchPoint {
  std::size_t n = 0;
  double mean_ticks = 0.0;
};

struct BenchResult {
  std::vector<BenchPoint> points;
  std::vector<ComplexityFit> fits; // degrees 1..degree_max
};

struct BenchConfig {
  Algorithm algorithm = Algorithm::kIpa;
  std::vector<std::size_t> n_values;
  std::size_t trials = 32;
  std::size_t repeats = 1; // timed solves per instance
  std::size_t degree_max = 4;
  TopologyFamily topology{Family::kGaussian, 5.0, 30.0, 0.0};
  double tau_ns = 10.0;
  double mu_m_per_ns = kSpeedOfLightMPerNs;
  SolveOptions solve;
  std::uint64_t seed = 1;
};

void validate(const BenchConfig& cfg);

// Mean ticks of `fn` per N over the benchmark instances, then the fits.
BenchResult bench_timings(const BenchConfig& cfg,
                          const std::function<void(const DistanceMatrix&)>& fn);
BenchResult bench_complexity(const BenchConfig& cfg);

void write_bench_data_csv(std::ostream& out, const BenchResult& result);
void write_bench_fit_csv(std::ostream& out, const BenchResult& result);

// Runs fn(0..count-1) on up to `threads` workers (0: hardware concurrency).
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

} // namespace rangesched
