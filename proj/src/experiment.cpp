#include "rangesched/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "rangesched/error.h"
#include "rangesched/io.h"
#include "rangesched/rng.h"
#include "rangesched/robustness.h"

namespace rangesched {

namespace {

constexpr SweepAlgorithm kAllSweepAlgorithms[] = {
    SweepAlgorithm::kOrthogonal, SweepAlgorithm::kConvex, SweepAlgorithm::kTsp,
    SweepAlgorithm::kIpa, SweepAlgorithm::kCdma};

std::int64_t now_ticks() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

Topology make_topology(const TopologyFamily& fam, std::size_t n, std::uint64_t seed) {
  TopologyConfig tc;
  tc.n = n;
  tc.sigma_m = fam.sigma_m;
  tc.sigma_outlier_m = fam.sigma_outlier_m;
  tc.seed = seed;
  if (fam.family == Family::kGaussian) {
    tc.outlier_prob = 0.0;
    return generate_gaussian(tc);
  }
  tc.outlier_prob = fam.outlier_prob;
  return generate_mixture(tc);
}

void validate(const TopologyFamily& fam) {
  if (!(fam.sigma_m > 0.0) || !std::isfinite(fam.sigma_m)) {
    throw InvalidInput("topology sigma must be positive");
  }
  if (fam.family == Family::kMixture) {
    if (!(fam.sigma_outlier_m > 0.0) || !std::isfinite(fam.sigma_outlier_m)) {
      throw InvalidInput("outlier sigma must be positive");
    }
    if (!(fam.outlier_prob >= 0.0 && fam.outlier_prob <= 1.0)) {
      throw InvalidInput("outlier probability must lie in [0, 1]");
    }
  }
}

std::size_t worker_count(std::size_t threads, std::size_t jobs) {
  std::size_t w = threads;
  if (w == 0) {
    w = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
  return std::max<std::size_t>(1, std::min(w, jobs));
}

[[noreturn]] void invalid_schedule(std::string_view who, std::size_t n, std::size_t trial,
                                   const InterferenceReport& rep) {
  std::ostringstream msg;
  msg << who << " produced a colliding schedule at n=" << n << " trial=" << trial
      << " (total overlap " << rep.total_overlap_ns << " ns)";
  throw SolverError(msg.str());
}

} // namespace

std::string_view to_string(SweepAlgorithm a) {
  switch (a) {
  case SweepAlgorithm::kOrthogonal:
    return "orthogonal";
  case SweepAlgorithm::kConvex:
    return "ca";
  case SweepAlgorithm::kTsp:
    return "tsp";
  case SweepAlgorithm::kIpa:
    return "ipa";
  case SweepAlgorithm::kCdma:
    return "cdma";
  }
  return "unknown";
}

SweepAlgorithm parse_sweep_algorithm(std::string_view name) {
  for (const auto a : kAllSweepAlgorithms) {
    if (name == to_string(a)) {
      return a;
    }
  }
  throw InvalidInput("unknown sweep algorithm '" + std::string(name) + "'");
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = worker_count(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) {
          error = std::current_exception();
        }
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(work);
  }
  for (auto& t : pool) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

void validate(const SweepConfig& cfg) {
  if (cfg.n_values.empty()) {
    throw InvalidInput("sweep needs at least one N");
  }
  if (cfg.algorithms.empty()) {
    throw InvalidInput("sweep needs at least one algorithm");
  }
  if (cfg.trials < 1) {
    throw InvalidInput("sweep needs at least one trial");
  }
  for (const auto n : cfg.n_values) {
    if (n < 2) {
      throw InvalidInput("sweep N must be at least 2");
    }
  }
  if (!(cfg.channel_rate_bps > 0.0)) {
    throw InvalidInput("channel rate must be positive");
  }
  validate(cfg.topology);
  MessageParams(cfg.tau_ns, cfg.mu_m_per_ns);
}

DistanceMatrix sweep_instance(const SweepConfig& cfg, std::size_t n, std::size_t trial) {
  return distances(make_topology(cfg.topology, n, derive_seed(cfg.seed, {n, trial})));
}

SweepResult run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const MessageParams p(cfg.tau_ns, cfg.mu_m_per_ns);
  std::vector<SweepAlgorithm> algos = cfg.algorithms;
  std::sort(algos.begin(), algos.end());
  algos.erase(std::unique(algos.begin(), algos.end()), algos.end());

  struct Job {
    std::size_t n, trial;
  };
  std::vector<Job> jobs;
  for (const auto n : cfg.n_values) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      jobs.push_back({n, t});
    }
  }
  std::vector<SweepRecord> records(jobs.size() * algos.size());

  parallel_for(jobs.size(), cfg.threads, [&](std::size_t job_idx) {
    const auto [n, trial] = jobs[job_idx];
    const DistanceMatrix d = sweep_instance(cfg, n, trial);
    for (std::size_t a = 0; a < algos.size(); ++a) {
      SweepRecord& rec = records[job_idx * algos.size() + a];
      rec.n = n;
      rec.trial = trial;
      rec.algorithm = algos[a];
      if (algos[a] == SweepAlgorithm::kCdma) {
        const auto t0 = now_ticks();
        rec.r_s_bps = cdma_throughput(d, p, {cfg.channel_rate_bps, cfg.cdma_code_length}, n);
        rec.solve_time_ticks = now_ticks() - t0;
        rec.t_r_ns = max_path_delay(d, p);
        continue;
      }
      SolveOptions opts;
      opts.tsp = cfg.tsp;
      opts.tsp.seed = derive_seed(cfg.tsp.seed, {n, trial});
      opts.ipa = cfg.ipa;
      Algorithm algo = Algorithm::kOrthogonal;
      switch (algos[a]) {
      case SweepAlgorithm::kConvex:
        algo = Algorithm::kConvex;
        break;
      case SweepAlgorithm::kTsp:
        algo = Algorithm::kTsp;
        break;
      case SweepAlgorithm::kIpa:
        algo = Algorithm::kIpa;
        break;
      default:
        break;
      }
      const auto t0 = now_ticks();
      const SolveOutcome out = solve(algo, d, p, opts);
      rec.solve_time_ticks = now_ticks() - t0;
      const InterferenceReport rep = evaluate(d, out.schedule, p);
      if (!rep.valid) {
        invalid_schedule(to_string(algos[a]), n, trial, rep);
      }
      rec.t_r_ns = out.report_cycle_ns;
      rec.r_s_bps = throughput_per_sensor(rec.t_r_ns, p, cfg.channel_rate_bps);
    }
  });

  std::sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return std::tie(a.n, a.trial, a.algorithm) < std::tie(b.n, b.trial, b.algorithm);
  });
  return {std::move(records)};
}

SweepResult run_outlier_sweep(SweepConfig cfg) {
  cfg.topology.family = Family::kMixture;
  return run_sweep(cfg);
}

std::vector<SweepSummaryRow> summarize(const SweepResult& result) {
  struct Acc {
    double t_r = 0.0, r_s = 0.0, ticks = 0.0;
    std::size_t count = 0;
  };
  std::map<std::pair<std::size_t, SweepAlgorithm>, Acc> acc;
  for (const auto& r : result.records) {
    auto& a = acc[{r.n, r.algorithm}];
    a.t_r += r.t_r_ns;
    a.r_s += r.r_s_bps;
    a.ticks += static_cast<double>(r.solve_time_ticks);
    ++a.count;
  }
  std::vector<SweepSummaryRow> rows;
  for (const auto& [key, a] : acc) {
    const auto c = static_cast<double>(a.count);
    rows.push_back({key.first, key.second, a.t_r / c, a.r_s / c, a.ticks / c});
  }
  return rows;
}

double mean_report_cycle(const SweepResult& result, std::size_t n, SweepAlgorithm a) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : result.records) {
    if (r.n == n && r.algorithm == a) {
      sum += r.t_r_ns;
      ++count;
    }
  }
  if (count == 0) {
    throw InvalidInput("no records for " + std::string(to_string(a)) + " at n=" +
                       std::to_string(n));
  }
  return sum / static_cast<double>(count);
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, bool with_ticks) {
  out << "n,trial,algorithm,t_r_ns,r_s_bps";
  out << (with_ticks ? ",solve_time_ticks\n" : "\n");
  for (const auto& r : result.records) {
    out << r.n << "," << r.trial << "," << to_string(r.algorithm) << ","
        << format_double(r.t_r_ns) << "," << format_double(r.r_s_bps);
    if (with_ticks) {
      out << "," << r.solve_time_ticks;
    }
    out << "\n";
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SweepSummaryRow>& rows) {
  out << "n,algorithm,mean_t_r_ns,mean_r_s_bps\n";
  for (const auto& r : rows) {
    out << r.n << "," << to_string(r.algorithm) << "," << format_double(r.mean_t_r_ns) << ","
        << format_double(r.mean_r_s_bps) << "\n";
  }
}

std::vector<SweepSummaryRow> run_cdma_compare(SweepConfig cfg) {
  if (std::find(cfg.algorithms.begin(), cfg.algorithms.end(), SweepAlgorithm::kCdma) ==
      cfg.algorithms.end()) {
    cfg.algorithms.push_back(SweepAlgorithm::kCdma);
  }
  return summarize(run_sweep(cfg));
}

void write_cdma_csv(std::ostream& out, const std::vector<SweepSummaryRow>& rows) {
  out << "n,algorithm,mean_r_s_bps\n";
  for (const auto& r : rows) {
    out << r.n << "," << to_string(r.algorithm) << "," << format_double(r.mean_r_s_bps)
        << "\n";
  }
}

void validate(const RobustnessSweepConfig& cfg) {
  if (cfg.n < 2) {
    throw InvalidInput("robustness sweep needs N >= 2");
  }
  if (cfg.topologies < 1 || cfg.trials < 1) {
    throw InvalidInput("robustness sweep needs at least one topology and one trial");
  }
  if (cfg.sigma_e_values.empty() || cfg.p_targets.empty()) {
    throw InvalidInput("robustness sweep needs sigma_e and p_target values");
  }
  for (const double s : cfg.sigma_e_values) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw InvalidInput("sigma_e must be nonnegative");
    }
  }
  for (const auto& pt : cfg.p_targets) {
    if (pt && !(*pt > 0.0 && *pt < 1.0)) {
      throw InvalidInput("p_target must lie in (0, 1)");
    }
  }
  validate(cfg.topology);
  MessageParams(cfg.tau_ns, cfg.mu_m_per_ns);
}

std::vector<RobustnessRow> run_robustness(const RobustnessSweepConfig& cfg) {
  validate(cfg);
  const MessageParams base(cfg.tau_ns, cfg.mu_m_per_ns);
  const std::size_t cells = cfg.p_targets.size() * cfg.sigma_e_values.size();
  // per_topo[t * cells + cell] = mean F of topology t.
  std::vector<double> per_topo(cfg.topologies * cells, 0.0);

  parallel_for(cfg.topologies, cfg.threads, [&](std::size_t t) {
    const DistanceMatrix d =
        distances(make_topology(cfg.topology, cfg.n, derive_seed(cfg.seed, {cfg.n, t})));
    // The unguarded schedule does not depend on sigma_e.
    std::optional<Schedule> plain;
    for (std::size_t pi = 0; pi < cfg.p_targets.size(); ++pi) {
      for (std::size_t si = 0; si < cfg.sigma_e_values.size(); ++si) {
        RobustnessConfig rc;
        rc.sigma_e_ns = cfg.sigma_e_values[si];
        rc.p_target = cfg.p_targets[pi];
        rc.trials = cfg.trials;
        rc.seed = derive_seed(cfg.seed, {cfg.n, t, 1});
        const GuardedParams gp = guarded(base, rc);
        Schedule s;
        if (!rc.p_target) {
          if (!plain) {
            plain = solve(cfg.algorithm, d, base, cfg.solve).schedule;
          }
          s = *plain;
        } else {
          s = solve(cfg.algorithm, d, gp.for_scheduling(), cfg.solve).schedule;
        }
        per_topo[t * cells + pi * cfg.sigma_e_values.size() + si] =
            jitter_fraction(d, s, base, rc).mean;
      }
    }
  });

  std::vector<RobustnessRow> rows;
  const auto topo_count = static_cast<double>(cfg.topologies);
  for (std::size_t pi = 0; pi < cfg.p_targets.size(); ++pi) {
    for (std::size_t si = 0; si < cfg.sigma_e_values.size(); ++si) {
      const std::size_t cell = pi * cfg.sigma_e_values.size() + si;
      double sum = 0.0;
      for (std::size_t t = 0; t < cfg.topologies; ++t) {
        sum += per_topo[t * cells + cell];
      }
      const double mean = sum / topo_count;
      double ss = 0.0;
      for (std::size_t t = 0; t < cfg.topologies; ++t) {
        const double dev = per_topo[t * cells + cell] - mean;
        ss += dev * dev;
      }
      const double se =
          cfg.topologies > 1 ? std::sqrt(ss / (topo_count - 1.0) / topo_count) : 0.0;
      rows.push_back({cfg.sigma_e_values[si], cfg.p_targets[pi], mean, se});
    }
  }
  return rows;
}

void write_robustness_csv(std::ostream& out, const std::vector<RobustnessRow>& rows) {
  out << "sigma_e,p_target,mean_F,stderr_F\n";
  for (const auto& r : rows) {
    out << format_double(r.sigma_e_ns) << "," << format_double(r.p_target.value_or(0.0)) << ","
        << format_double(r.mean_f) << "," << format_double(r.stderr_f) << "\n";
  }
}

void validate(const BenchConfig& cfg) {
  if (cfg.n_values.empty() || cfg.trials < 1 || cfg.repeats < 1) {
    throw InvalidInput("bench needs N values, trials and repeats");
  }
  if (!std::is_sorted(cfg.n_values.begin(), cfg.n_values.end())) {
    throw InvalidInput("bench N values must be ascending");
  }
  if (cfg.n_values.front() < 2) {
    throw InvalidInput("bench N must be at least 2");
  }
  if (cfg.degree_max < 1) {
    throw InvalidInput("bench degree_max must be at least 1");
  }
  if (cfg.n_values.size() <= cfg.degree_max) {
    std::ostringstream msg;
    msg << "a degree " << cfg.degree_max << " fit needs more than " << cfg.degree_max
        << " N values, got " << cfg.n_values.size();
    throw InvalidInput(msg.str());
  }
  validate(cfg.topology);
  MessageParams(cfg.tau_ns, cfg.mu_m_per_ns);
}

BenchResult bench_timings(const BenchConfig& cfg,
                          const std::function<void(const DistanceMatrix&)>& fn) {
  validate(cfg);
  BenchResult result;
  for (const auto n : cfg.n_values) {
    double total = 0.0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const DistanceMatrix d =
          distances(make_topology(cfg.topology, n, derive_seed(cfg.seed, {n, t})));
      const auto t0 = now_ticks();
      for (std::size_t r = 0; r < cfg.repeats; ++r) {
        fn(d);
      }
      total += static_cast<double>(now_ticks() - t0) / static_cast<double>(cfg.repeats);
    }
    result.points.push_back({n, total / static_cast<double>(cfg.trials)});
  }
  std::vector<double> xs, ys;
  for (const auto& pt : result.points) {
    xs.push_back(static_cast<double>(pt.n));
    ys.push_back(pt.mean_ticks);
  }
  result.fits = fit_degrees(xs, ys, cfg.degree_max);
  return result;
}

BenchResult bench_complexity(const BenchConfig& cfg) {
  const MessageParams p(cfg.tau_ns, cfg.mu_m_per_ns);
  volatile double sink = 0.0;
  return bench_timings(cfg, [&](const DistanceMatrix& d) {
    sink = sink + solve(cfg.algorithm, d, p, cfg.solve).report_cycle_ns;
  });
}

void write_bench_data_csv(std::ostream& out, const BenchResult& result) {
  out << "n,mean_ticks\n";
  for (const auto& pt : result.points) {
    out << pt.n << "," << format_double(pt.mean_ticks) << "\n";
  }
}

void write_bench_fit_csv(std::ostream& out, const BenchResult& result) {
  out << "degree,residual_sq,coefficients\n";
  for (const auto& f : result.fits) {
    out << f.degree << "," << format_double(f.residual_sq) << ",";
    for (std::size_t i = 0; i < f.coefficients.size(); ++i) {
      out << (i ? " " : "") << format_double(f.coefficients[i]);
    }
    out << "\n";
  }
}

} // namespace rangesched
