// Acceptance suite: one PASS/FAIL line per criterion. Criterion 13 is
// reported but does not affect the exit status.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.h"
#include "rangesched/convex.h"
#include "rangesched/experiment.h"
#include "rangesched/grid_search.h"
#include "rangesched/ipa.h"
#include "rangesched/rng.h"
#include "rangesched/robustness.h"
#include "rangesched/tsp.h"

using namespace rangesched;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome c1_three_node_convex() {
  const auto d = fixtures::three_node();
  const auto p = fixtures::three_node_params();
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = convex_delays(d, p, NodeOrder::identity(3));
  const double tr = report_cycle(d, s, p);
  const double secs = seconds_since(t0);
  const bool exact = near(s[0], 0, 1e-9) && near(s[1], 25.0 / 3.0, 1e-6) && near(s[2], 15, 1e-6) &&
                     near(tr, 185.0 / 3.0, 1e-6);
  const bool paper = near(s[1], 8.4, 0.5) && near(s[2], 15, 0.5) && near(tr, 62, 0.5);
  return {exact && paper && secs < 1e-3,
          fmt("delta=(%.3f, %.3f, %.3f) ns, T_R=%.3f ns, %.1f us", s[0], s[1], s[2], tr, secs * 1e6)};
}

Outcome c2_grid() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = grid_search(fixtures::three_node(), fixtures::three_node_params());
  const double secs = seconds_since(t0);
  const bool ok = r.schedule[0] == 0.0 && near(r.schedule[1], 8.4, 1e-9) &&
                  near(r.schedule[2], 15.0, 1e-9) && secs < 10.0;
  return {ok, fmt("delta=(%.10g, %.10g, %.10g) ns, T_R=%.3f ns, %.3f s", r.schedule[0], r.schedule[1],
                  r.schedule[2], r.report_cycle_ns, secs)};
}

Outcome c3_tsp() {
  const auto d = fixtures::three_node();
  const auto p = fixtures::three_node_params();
  const auto inst = cost_matrix(d, p);
  const auto tour = solve_exact(inst);
  const double bac_cycle = tour_cost(inst, {1, 0, 2});
  const double bac = report_cycle(d, convex_delays(d, p, NodeOrder({1, 0, 2})), p);
  const double acb = report_cycle(d, convex_delays(d, p, NodeOrder({0, 2, 1})), p);
  const double cba = report_cycle(d, convex_delays(d, p, NodeOrder({2, 1, 0})), p);
  const auto chosen = tsp_schedule(d, p, inst, Tour{{1, 0, 2}, bac_cycle});
  const bool ok = near(tour.cost_ns, 30, 0.01) && near(bac_cycle, 30, 0.01) && near(bac, 63.333, 0.1) &&
                  near(acb, 65.0, 0.1) && near(cba, 70.0, 0.1) && chosen.order == NodeOrder({1, 0, 2});
  return {ok, fmt("cycle=%.3f ns (exact %.3f), B-A-C %.3f, A-C-B %.3f, C-B-A %.3f ns", bac_cycle,
                  tour.cost_ns, bac, acb, cba)};
}

Outcome c4_ipa() {
  const auto r = ipa_solve(fixtures::three_node(), fixtures::three_node_params());
  const auto& a = r.state.added_m;
  const auto& s = r.schedule;
  const bool ok = r.state.adjusting_passes == 2 && near(a[0], 0, 1e-9) && near(a[1], 2.5, 1e-9) &&
                  near(a[2], 4.5, 1e-9) && near(s[0], 0, 0.15) && near(s[1], 8.4, 0.15) &&
                  near(s[2], 15, 0.15);
  return {ok, fmt("%zu adjusting sweeps, cum=(%.3f, %.3f, %.3f) m, delta=(%.3f, %.3f, %.3f) ns",
                  r.state.adjusting_passes, a[0], a[1], a[2], s[0], s[1], s[2])};
}

Outcome c5_orthogonal() {
  const auto b = orthogonal_baseline(fixtures::three_node(), fixtures::three_node_params());
  const bool ok = near(b.slot_ns, 47, 1.5) && near(b.report_cycle_ns, 141, 1.5) &&
                  near(b.slot_ns, 140.0 / 3.0, 1e-9) && near(b.report_cycle_ns, 140, 1e-9);
  return {ok, fmt("T_D=%.3f ns, T_R=%.3f ns", b.slot_ns, b.report_cycle_ns)};
}

// Orders checked per instance: every order up to 7 nodes, otherwise 500
// random orders plus the identity.
std::vector<NodeOrder> orders_for(std::size_t n, Rng& rng) {
  if (n <= 7) {
    return all_orders(n);
  }
  std::vector<NodeOrder> out{NodeOrder::identity(n)};
  std::vector<NodeId> perm(n);
  for (int r = 0; r < 500; ++r) {
    std::iota(perm.begin(), perm.end(), NodeId{0});
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(perm[i], perm[static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1))]);
    }
    out.emplace_back(perm);
  }
  return out;
}

Outcome c6_appendix_a() {
  Rng rng(derive_seed(6, {0}));
  std::size_t collisions = 0, gap_violations = 0, schedules = 0;
  const MessageParams p(10.0);
  for (std::uint64_t inst = 0; inst < 1000; ++inst) {
    const std::size_t n = 3 + inst % 10;
    const std::uint64_t seed = derive_seed(6, {inst});
    const auto d = inst % 2 ? fixtures::gaussian_instance(n, seed) : fixtures::mixture_instance(n, seed);
    for (const auto& ord : orders_for(n, rng)) {
      const auto s = convex_delays(d, p, ord);
      ++schedules;
      if (!evaluate(d, s, p).valid) {
        ++collisions;
      }
      for (std::size_t pos = 1; pos + 1 < n; ++pos) {
        const NodeId a = ord[pos - 1], m = ord[pos], b = ord[pos + 1];
        if (s[a] + d(m, a) / 0.3 + 2 * p.tau_ns() > s[b] + d(m, b) / 0.3 + 1e-9) {
          ++gap_violations;
        }
      }
    }
  }
  return {collisions == 0 && gap_violations == 0,
          fmt("%zu schedules, %zu colliding, %zu gap violations", schedules, collisions, gap_violations)};
}

Outcome c7_oracle() {
  const MessageParams p(10.0);
  std::size_t violations = 0;
  std::string detail;
  double secs_total = 0.0;
  struct Case {
    std::size_t n, count;
    double step;
  };
  for (const Case c : {Case{3, 200, 0.1}, Case{4, 50, 0.5}}) {
    std::size_t grid_better = 0, order_better = 0;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < c.count; ++i) {
      const auto d = fixtures::gaussian_instance(c.n, derive_seed(7, {c.n, i}));
      GridSearchConfig cfg;
      cfg.step_ns = c.step;
      // N T_D - tau contains every optimal canonical schedule.
      cfg.max_delay_ns = static_cast<double>(c.n) * max_path_delay(d, p) - p.tau_ns();
      const auto t0 = std::chrono::steady_clock::now();
      const auto grid = grid_search(d, p, cfg);
      secs_total += seconds_since(t0);
      const auto best = best_over_orders(d, p, all_orders(c.n));
      const double slack = c.step * static_cast<double>(c.n - 1) + 1e-9;
      const double diff = best.report_cycle_ns - grid.report_cycle_ns;
      worst = std::max(worst, std::abs(diff));
      grid_better += diff > slack ? 1 : 0;
      order_better += -diff > slack ? 1 : 0;
    }
    violations += grid_better + order_better;
    detail += fmt("N=%zu: %zu/%zu violations (grid better %zu, order better %zu, max |diff| %.2f ns); ",
                  c.n, grid_better + order_better, c.count, grid_better, order_better, worst);
  }
  return {violations == 0, detail + fmt("grid time %.1f s", secs_total)};
}

SweepConfig paper_sweep(Family fam, double sigma) {
  SweepConfig cfg;
  cfg.n_values = {100};
  cfg.trials = 32;
  cfg.topology.family = fam;
  cfg.topology.sigma_m = sigma;
  cfg.topology.sigma_outlier_m = 30.0;
  cfg.topology.outlier_prob = 1.0 / 3.0;
  cfg.algorithms = {SweepAlgorithm::kOrthogonal, SweepAlgorithm::kConvex, SweepAlgorithm::kTsp,
                    SweepAlgorithm::kIpa};
  cfg.seed = 2017;
  return cfg;
}

Outcome c8_monte_carlo() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = run_sweep(paper_sweep(Family::kGaussian, 5.0));
  const auto m = run_outlier_sweep(paper_sweep(Family::kMixture, 5.0));
  const double secs = seconds_since(t0);
  const double orth = mean_report_cycle(g, 100, SweepAlgorithm::kOrthogonal);
  const double r_tsp = orth / mean_report_cycle(g, 100, SweepAlgorithm::kTsp);
  const double r_ca = orth / mean_report_cycle(g, 100, SweepAlgorithm::kConvex);
  const double r_ipa = orth / mean_report_cycle(g, 100, SweepAlgorithm::kIpa);
  const double r_mix = mean_report_cycle(m, 100, SweepAlgorithm::kOrthogonal) /
                       mean_report_cycle(m, 100, SweepAlgorithm::kTsp);
  const bool ok = r_tsp >= 7 && r_tsp <= 13 && r_ca >= 2 && r_ca <= 4.5 && r_ipa >= 2 && r_ipa <= 4.5 &&
                  r_mix >= 5.5 && r_mix <= 10.5 && secs < 600;
  return {ok, fmt("orth/TSP %.2f, orth/CA %.2f, orth/IPA %.2f, mixture orth/TSP %.2f, %.1f s", r_tsp, r_ca,
                  r_ipa, r_mix, secs)};
}

Outcome c9_scaled_radius() {
  auto cfg = paper_sweep(Family::kGaussian, 500.0);
  cfg.algorithms = {SweepAlgorithm::kTsp, SweepAlgorithm::kIpa};
  const auto r = run_sweep(cfg);
  const double ipa = mean_report_cycle(r, 100, SweepAlgorithm::kIpa);
  const double tsp = mean_report_cycle(r, 100, SweepAlgorithm::kTsp);
  return {ipa < tsp, fmt("mean T_R IPA %.1f ns, TSP %.1f ns", ipa, tsp)};
}

Outcome c10_dominance() {
  SweepConfig cfg;
  cfg.n_values = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  cfg.trials = 32;
  cfg.algorithms = {SweepAlgorithm::kConvex, SweepAlgorithm::kIpa};
  cfg.seed = 320;
  const auto r = run_sweep(cfg);
  std::size_t violations = 0, count = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < r.records.size(); i += 2) {
    const double ca = r.records[i].t_r_ns;
    const double ipa = r.records[i + 1].t_r_ns;
    ++count;
    worst = std::max(worst, ipa - ca);
    if (ipa > ca + 1e-6) {
      ++violations;
    }
  }
  return {violations == 0 && count == 320,
          fmt("%zu instances, %zu with IPA worse, max excess %.3g ns", count, violations, worst)};
}

Outcome c11_guard() {
  const double ratio = guard_interval(1.0, 0.95);
  bool ok = near(ratio, 1.6449, 0.01);
  std::string rates;
  for (const double pt : {0.90, 0.95, 0.99}) {
    const double eps = guard_interval(1.0, pt);
    const double rate = adjacent_clear_rate(1.0, eps, 100000, derive_seed(11, {static_cast<std::uint64_t>(pt * 100)}));
    ok = ok && near(rate, pt, 0.01);
    rates += fmt(" P=%.2f:%.4f", pt, rate);
  }
  return {ok, fmt("eps/sigma=%.4f,", ratio) + rates};
}

Outcome c12_robustness() {
  RobustnessSweepConfig cfg;
  cfg.n = 20;
  cfg.topologies = 100;
  cfg.trials = 20;
  cfg.sigma_e_values = {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0};
  cfg.p_targets = {std::nullopt, 0.95, 0.99};
  cfg.seed = 13;
  const auto rows = run_robustness(cfg);
  const std::size_t ns = cfg.sigma_e_values.size();
  bool monotone = true, guard_helps = true;
  std::string none, p99;
  for (std::size_t pi = 0; pi < cfg.p_targets.size(); ++pi) {
    for (std::size_t si = 1; si < ns; ++si) {
      if (rows[pi * ns + si].mean_f > rows[pi * ns + si - 1].mean_f + 1e-12) {
        monotone = false;
      }
    }
  }
  for (std::size_t si = 0; si < ns; ++si) {
    const double f0 = rows[si].mean_f;
    const double f99 = rows[2 * ns + si].mean_f;
    if (cfg.sigma_e_values[si] > 0.0 && !(f99 > f0)) {
      guard_helps = false;
    }
    none += fmt(" %.3f", f0);
    p99 += fmt(" %.3f", f99);
  }
  return {monotone && guard_helps, "F(no guard):" + none + "; F(P=0.99):" + p99};
}

Outcome c13_complexity() {
  BenchConfig cfg;
  cfg.algorithm = Algorithm::kIpa;
  for (std::size_t n = 5; n <= 50; n += 5) {
    cfg.n_values.push_back(n);
  }
  cfg.trials = 32;
  cfg.repeats = 3;
  cfg.degree_max = 4;
  const auto r = bench_complexity(cfg);
  const double ratio = r.fits[2].residual_sq / r.fits[0].residual_sq;
  return {ratio <= 0.05, fmt("residual deg3/deg1 = %.4f (deg1 %.3g, deg3 %.3g ticks^2)", ratio,
                             r.fits[0].residual_sq, r.fits[2].residual_sq)};
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    bool gate;
  };
  const std::vector<Criterion> criteria{
      {1, "three-node example convex walkthrough", c1_three_node_convex, true},
      {2, "grid oracle at 0.1 ns", c2_grid, true},
      {3, "TSP cycle and rotations", c3_tsp, true},
      {4, "IPA worked example", c4_ipa, true},
      {5, "orthogonal baseline", c5_orthogonal, true},
      {6, "neighbour gap property suite", c6_appendix_a, true},
      {7, "grid vs best order equivalence", c7_oracle, true},
      {8, "Monte-Carlo report-cycle ratios", c8_monte_carlo, true},
      {9, "scaled radius: IPA beats TSP", c9_scaled_radius, true},
      {10, "IPA never worse than CA", c10_dominance, true},
      {11, "guard interval", c11_guard, true},
      {12, "robustness ordering", c12_robustness, true},
      {13, "IPA complexity fit (advisory)", c13_complexity, false},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const char* tag = o.pass ? "PASS" : (c.gate ? "FAIL" : "WARN");
    std::printf("[%s] %2d %s: %s\n", tag, c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass && c.gate) {
      ++failed;
    }
  }
  std::printf("%d hard criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
