#include "rangesched/schedule.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rangesched/error.h"

namespace rangesched {

MessageParams::MessageParams(double tau_ns, double mu_m_per_ns)
    : tau_ns_(tau_ns), mu_(mu_m_per_ns) {
  if (!(tau_ns > 0.0) || !std::isfinite(tau_ns)) {
    throw InvalidInput("packet duration tau must be positive");
  }
  if (!(mu_m_per_ns > 0.0) || !std::isfinite(mu_m_per_ns)) {
    throw InvalidInput("propagation speed mu must be positive");
  }
}

Schedule::Schedule(std::vector<double> delays_ns) : delays_(std::move(delays_ns)) {
  for (std::size_t i = 0; i < delays_.size(); ++i) {
    if (!std::isfinite(delays_[i]) || delays_[i] < 0.0) {
      std::ostringstream msg;
      msg << "invalid delay for node " << i << ": " << delays_[i];
      throw InvalidInput(msg.str());
    }
  }
}

Schedule Schedule::canonical(std::vector<double> delays_ns) {
  if (!delays_ns.empty()) {
    const double lo = *std::min_element(delays_ns.begin(), delays_ns.end());
    for (auto& v : delays_ns) {
      v -= lo;
    }
  }
  return Schedule(std::move(delays_ns));
}

bool Schedule::is_canonical() const {
  return !delays_.empty() &&
         *std::min_element(delays_.begin(), delays_.end()) == 0.0;
}

std::vector<double> path_delays(const DistanceMatrix& d, const MessageParams& p) {
  std::vector<double> delta(d.data().begin(), d.data().end());
  for (auto& v : delta) {
    v /= p.mu_m_per_ns();
  }
  return delta;
}

double max_path_delay(const DistanceMatrix& d, const MessageParams& p) {
  return d.max_distance() / p.mu_m_per_ns() + p.tau_ns();
}

namespace {

void check_sizes(const DistanceMatrix& d, const Schedule& s) {
  if (d.size() != s.size()) {
    std::ostringstream msg;
    msg << "schedule has " << s.size() << " delays for " << d.size() << " nodes";
    throw InvalidInput(msg.str());
  }
}

} // namespace

std::vector<std::vector<Arrival>> arrival_intervals(const DistanceMatrix& d,
                                                    const Schedule& s,
                                                    const MessageParams& p) {
  check_sizes(d, s);
  const std::size_t n = d.size();
  std::vector<std::vector<Arrival>> out(n);
  for (NodeId k = 0; k < n; ++k) {
    out[k].reserve(n - 1);
    for (NodeId i = 0; i < n; ++i) {
      if (i == k) {
        continue;
      }
      const double start = s[i] + d(k, i) / p.mu_m_per_ns();
      out[k].push_back({i, start, start + p.tau_ns()});
    }
  }
  return out;
}

double pairwise_overlap(std::span<const double> starts_ns, double width_ns) {
  std::vector<double> sorted(starts_ns.begin(), starts_ns.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    const double end = sorted[a] + width_ns;
    for (std::size_t b = a + 1; b < sorted.size() && sorted[b] < end; ++b) {
      total += end - sorted[b];
    }
  }
  return total;
}

double clean_fraction(double total_overlap_ns, std::size_t n, double tau_ns) {
  const double packet_time = static_cast<double>(n) * static_cast<double>(n - 1) * tau_ns;
  return std::clamp(1.0 - total_overlap_ns / packet_time, 0.0, 1.0);
}

InterferenceReport evaluate(const DistanceMatrix& d, const Schedule& s,
                            const MessageParams& p, double tolerance_ns) {
  check_sizes(d, s);
  const std::size_t n = d.size();
  InterferenceReport report;
  report.per_receiver_overlap_ns.resize(n, 0.0);
  std::vector<double> starts;
  starts.reserve(n - 1);
  for (NodeId k = 0; k < n; ++k) {
    starts.clear();
    for (NodeId i = 0; i < n; ++i) {
      if (i != k) {
        starts.push_back(s[i] + d(k, i) / p.mu_m_per_ns());
      }
    }
    report.per_receiver_overlap_ns[k] = pairwise_overlap(starts, p.tau_ns());
    report.total_overlap_ns += report.per_receiver_overlap_ns[k];
  }
  report.valid = report.total_overlap_ns <= tolerance_ns;
  // Overlap inside the tolerance is rounding, not interference.
  report.fraction_clean = report.valid ? 1.0 : clean_fraction(report.total_overlap_ns, n, p.tau_ns());
  return report;
}

double report_cycle(const DistanceMatrix& d, const Schedule& s, const MessageParams& p) {
  check_sizes(d, s);
  const std::size_t n = d.size();
  double latest = -std::numeric_limits<double>::infinity();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i != j) {
        latest = std::max(latest, s[i] + d(j, i) / p.mu_m_per_ns());
      }
    }
  }
  return latest + p.tau_ns();
}

bool concurrency_ok(std::span<const double> matrix_m, std::size_t n,
                    const MessageParams& p, double tolerance_m) {
  const double len = p.length_m();
  std::vector<double> row;
  row.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    row.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k) {
        row.push_back(matrix_m[k * n + i]);
      }
    }
    std::sort(row.begin(), row.end());
    for (std::size_t a = 1; a < row.size(); ++a) {
      if (row[a] - row[a - 1] < len - tolerance_m) {
        return false;
      }
    }
  }
  return true;
}

bool concurrency_ok(const DistanceMatrix& d, const MessageParams& p) {
  return concurrency_ok(d.data(), d.size(), p);
}

BaselineResult orthogonal_baseline(const DistanceMatrix& d, const MessageParams& p) {
  const std::size_t n = d.size();
  const double slot = max_path_delay(d, p);
  std::vector<double> delays(n);
  for (std::size_t i = 0; i < n; ++i) {
    delays[i] = static_cast<double>(i) * slot;
  }
  return {Schedule(std::move(delays)), slot, static_cast<double>(n) * slot};
}

double throughput_per_sensor(double report_cycle_ns, const MessageParams& p,
                             double channel_rate_bps) {
  if (!(report_cycle_ns > 0.0)) {
    throw InvalidInput("report cycle must be positive");
  }
  return channel_rate_bps * p.tau_ns() / report_cycle_ns;
}

std::size_t default_code_length(std::size_t n) {
  std::size_t m = 1;
  while (m < n) {
    m <<= 1;
  }
  return m;
}

double cdma_throughput(const DistanceMatrix& d, const MessageParams& p,
                       const CdmaConfig& cfg, std::size_t n) {
  const std::size_t m = cfg.code_length == 0 ? default_code_length(n) : cfg.code_length;
  if (m < n) {
    std::ostringstream msg;
    msg << "CDMA code length " << m << " is shorter than the node count " << n;
    throw InvalidInput(msg.str());
  }
  return cfg.channel_rate_bps * p.tau_ns() / (static_cast<double>(m) * max_path_delay(d, p));
}

} // namespace rangesched
