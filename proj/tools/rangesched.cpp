#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rangesched/error.h"
#include "rangesched/experiment.h"
#include "rangesched/io.h"
#include "rangesched/robustness.h"
#include "rangesched/solvers.h"
#include "rangesched/topology.h"

namespace rs = rangesched;

namespace {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitInvalidSchedule = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitSolver = 3;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(text);
  while (std::getline(ss, part, sep)) {
    parts.push_back(part);
  }
  return parts;
}

std::size_t to_size(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size()) {
      throw std::invalid_argument(s);
    }
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw rs::InvalidInput("invalid " + what + " '" + s + "'");
  }
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw rs::InvalidInput("invalid " + what + " '" + s + "'");
  }
}

// "10,20,30" or "lo:hi:step".
std::vector<std::size_t> parse_n_values(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
      throw rs::InvalidInput("N range must look like lo:hi:step");
    }
    const auto lo = to_size(parts[0], "N"), hi = to_size(parts[1], "N"),
               step = to_size(parts[2], "N step");
    if (step == 0 || lo > hi) {
      throw rs::InvalidInput("empty N range '" + text + "'");
    }
    for (std::size_t n = lo; n <= hi; n += step) {
      out.push_back(n);
    }
    return out;
  }
  for (const auto& p : split(text, ',')) {
    out.push_back(to_size(p, "N"));
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) {
    out.push_back(to_double(p, what));
  }
  return out;
}

struct Common {
  std::uint64_t seed = 1;
  double tau_ns = 10.0;
  double mu = rs::kSpeedOfLightMPerNs;
};

struct InstanceArgs {
  std::string topology_file;
  std::string distance_file;

  void add(CLI::App* sub) {
    auto* t = sub->add_option("--topology", topology_file, "Topology CSV (node,x_m,y_m)");
    auto* d = sub->add_option("--distances", distance_file, "Distance CSV (i,j,d_m)");
    t->excludes(d);
  }

  rs::DistanceMatrix load() const {
    if (!topology_file.empty()) {
      return rs::distances(rs::load_topology(topology_file));
    }
    if (!distance_file.empty()) {
      return rs::load_distances(distance_file);
    }
    throw rs::InvalidInput("one of --topology or --distances is required");
  }
};

struct SolverArgs {
  std::string algorithm = "ca";
  std::string order;
  double grid_step = 0.1;
  std::optional<double> grid_max_delay;
  std::string grid_timing = "sampled";
  std::size_t exact_threshold = rs::kDefaultExactThreshold;
  std::size_t restarts = 8;
  std::size_t max_iterations = 0;

  void add(CLI::App* sub, bool with_algorithm = true) {
    if (with_algorithm) {
      sub->add_option("--algorithm", algorithm, "orthogonal, ca, tsp, ipa or grid")
          ->capture_default_str();
    }
    sub->add_option("--order", order, "CA transmission order, e.g. 2,0,1");
    sub->add_option("--grid-step", grid_step, "Grid step in ns")->capture_default_str();
    sub->add_option("--grid-max-delay", grid_max_delay, "Grid delay bound in ns (default T_D)");
    sub->add_option("--grid-timing", grid_timing, "sampled or exact")->capture_default_str();
    sub->add_option("--exact-threshold", exact_threshold, "Largest N solved exactly by TSP")
        ->capture_default_str();
    sub->add_option("--restarts", restarts, "TSP heuristic restarts")->capture_default_str();
    sub->add_option("--max-iterations", max_iterations, "IPA sweep cap (0: 10 N^2)")
        ->capture_default_str();
  }

  rs::SolveOptions options(std::uint64_t seed) const {
    rs::SolveOptions o;
    if (!order.empty()) {
      std::vector<rs::NodeId> nodes;
      for (const auto& p : split(order, ',')) {
        nodes.push_back(to_size(p, "order entry"));
      }
      o.order = rs::NodeOrder(std::move(nodes));
    }
    o.tsp = {exact_threshold, restarts, seed};
    o.ipa.max_iterations = max_iterations;
    o.grid.step_ns = grid_step;
    o.grid.max_delay_ns = grid_max_delay;
    if (grid_timing == "exact") {
      o.grid.timing = rs::GridTiming::kExact;
    } else if (grid_timing != "sampled") {
      throw rs::InvalidInput("grid timing must be 'sampled' or 'exact'");
    }
    return o;
  }
};

struct FamilyArgs {
  std::string family = "gaussian";
  double sigma = 5.0;
  double sigma_outlier = 30.0;
  double outlier_prob = 1.0 / 3.0;

  void add(CLI::App* sub, bool with_family = true) {
    if (with_family) {
      sub->add_option("--family", family, "gaussian or mixture")->capture_default_str();
    }
    sub->add_option("--sigma", sigma, "Inlier standard deviation in m")->capture_default_str();
    sub->add_option("--sigma-outlier", sigma_outlier, "Outlier standard deviation in m")
        ->capture_default_str();
    sub->add_option("--outlier-prob", outlier_prob, "Outlier probability")
        ->capture_default_str();
  }

  rs::TopologyFamily get() const {
    rs::TopologyFamily f;
    if (family == "gaussian") {
      f.family = rs::Family::kGaussian;
    } else if (family == "mixture") {
      f.family = rs::Family::kMixture;
    } else {
      throw rs::InvalidInput("family must be 'gaussian' or 'mixture'");
    }
    f.sigma_m = sigma;
    f.sigma_outlier_m = sigma_outlier;
    f.outlier_prob = outlier_prob;
    return f;
  }
};

struct SweepArgs {
  std::string n_values = "10:100:10";
  std::size_t trials = 32;
  std::string algorithms = "orthogonal,ca,tsp,ipa";
  double rate_bps = 1e9;
  std::size_t code_length = 0;
  std::size_t threads = 0;
  std::size_t exact_threshold = rs::kDefaultExactThreshold;
  std::size_t restarts = 8;
  std::size_t max_iterations = 0;
  std::string summary_file;
  bool no_ticks = false;
  FamilyArgs family;

  void add(CLI::App* sub, bool with_family = true) {
    sub->add_option("--n-values", n_values, "List (10,20) or range (lo:hi:step)")
        ->capture_default_str();
    sub->add_option("--trials", trials, "Topologies per N")->capture_default_str();
    sub->add_option("--algorithms", algorithms, "Comma list from orthogonal,ca,tsp,ipa,cdma")
        ->capture_default_str();
    sub->add_option("--rate", rate_bps, "Channel rate R_b in bit/s")->capture_default_str();
    sub->add_option("--code-length", code_length, "CDMA code length (0: next power of two)")
        ->capture_default_str();
    sub->add_option("--threads", threads, "Worker threads (0: all cores)")
        ->capture_default_str();
    sub->add_option("--exact-threshold", exact_threshold, "Largest N solved exactly by TSP")
        ->capture_default_str();
    sub->add_option("--restarts", restarts, "TSP heuristic restarts")->capture_default_str();
    sub->add_option("--max-iterations", max_iterations, "IPA sweep cap (0: 10 N^2)")
        ->capture_default_str();
    sub->add_option("--summary", summary_file, "Also write per-N means to this CSV");
    sub->add_flag("--no-ticks", no_ticks, "Omit the solve_time_ticks column");
    family.add(sub, with_family);
  }

  rs::SweepConfig get(const Common& c) const {
    rs::SweepConfig cfg;
    cfg.n_values = parse_n_values(n_values);
    cfg.trials = trials;
    cfg.topology = family.get();
    for (const auto& a : split(algorithms, ',')) {
      cfg.algorithms.push_back(rs::parse_sweep_algorithm(a));
    }
    cfg.tau_ns = c.tau_ns;
    cfg.mu_m_per_ns = c.mu;
    cfg.channel_rate_bps = rate_bps;
    cfg.cdma_code_length = code_length;
    cfg.tsp = {exact_threshold, restarts, c.seed};
    cfg.ipa.max_iterations = max_iterations;
    cfg.seed = c.seed;
    cfg.threads = threads;
    return cfg;
  }
};

// Writes to `path`, or stdout when empty.
template <typename F>
void emit(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw rs::InvalidInput("cannot write " + path);
  }
  write(out);
}

nlohmann::json report_json(const rs::DistanceMatrix& d, const rs::Schedule& s,
                           const rs::MessageParams& p, const rs::InterferenceReport& rep) {
  nlohmann::json j;
  j["n"] = d.size();
  j["tau_ns"] = p.tau_ns();
  j["schedule_ns"] = rs::to_json(s);
  j["report_cycle_ns"] = rs::report_cycle(d, s, p);
  j["slot_ns"] = rs::max_path_delay(d, p);
  j["report"] = rs::to_json(rep);
  return j;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Propagation-delay-aware transmission scheduling for ranging networks"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file");
  Common common;
  app.add_option("--seed", common.seed, "Base random seed")
      ->envname("RANGESCHED_SEED")
      ->capture_default_str();
  app.add_option("--tau", common.tau_ns, "Packet length in ns")->capture_default_str();
  app.add_option("--mu", common.mu, "Propagation speed in m/ns")->capture_default_str();

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random topology");
  std::size_t gen_n = 10;
  std::string gen_out, gen_dist_out;
  FamilyArgs gen_family;
  gen->add_option("--n", gen_n, "Number of nodes")->capture_default_str();
  gen->add_option("--output,-o", gen_out, "Topology CSV (default stdout)");
  gen->add_option("--distances-output", gen_dist_out, "Also write the distance CSV");
  gen_family.add(gen);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Compute a schedule for one instance");
  InstanceArgs solve_in;
  SolverArgs solve_args;
  std::string solve_out, solve_schedule_out;
  solve_in.add(solve_cmd);
  solve_args.add(solve_cmd);
  solve_cmd->add_option("--output,-o", solve_out, "JSON report (default stdout)");
  solve_cmd->add_option("--schedule-output", solve_schedule_out, "Also write the schedule CSV");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Check a schedule for collisions");
  InstanceArgs eval_in;
  std::string eval_schedule, eval_out;
  eval_in.add(eval_cmd);
  eval_cmd->add_option("--schedule", eval_schedule, "Schedule CSV (node,delta_ns)")->required();
  eval_cmd->add_option("--output,-o", eval_out, "JSON report (default stdout)");

  // sweep / outlier-sweep / cdma-compare
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo report-cycle sweep");
  SweepArgs sweep_args;
  std::string sweep_out;
  sweep_args.add(sweep_cmd);
  sweep_cmd->add_option("--output,-o", sweep_out, "Record CSV (default stdout)");

  auto* outlier_cmd = app.add_subcommand("outlier-sweep", "Sweep on mixture topologies");
  SweepArgs outlier_args;
  std::string outlier_out;
  outlier_args.add(outlier_cmd, false);
  outlier_cmd->add_option("--output,-o", outlier_out, "Record CSV (default stdout)");

  auto* cdma_cmd = app.add_subcommand("cdma-compare", "Mean per-sensor throughput vs CDMA");
  SweepArgs cdma_args;
  std::string cdma_out;
  cdma_args.add(cdma_cmd);
  cdma_cmd->add_option("--output,-o", cdma_out, "CSV (default stdout)");

  // robustness
  auto* rob_cmd = app.add_subcommand("robustness", "Interference-free fraction under jitter");
  std::string rob_sigma = "0,0.5,1,1.5,2,2.5,3", rob_p = "0,0.95,0.99", rob_out;
  std::string rob_algorithm = "ipa";
  std::size_t rob_n = 20, rob_topologies = 100, rob_trials = 20, rob_threads = 0;
  FamilyArgs rob_family;
  rob_cmd->add_option("--sigma-e", rob_sigma, "Comma list of jitter std devs in ns")
      ->capture_default_str();
  rob_cmd->add_option("--p-target", rob_p, "Comma list of guard targets (0: no guard)")
      ->capture_default_str();
  rob_cmd->add_option("--trials", rob_trials, "Jitter draws per topology")
      ->capture_default_str();
  rob_cmd->add_option("--topologies", rob_topologies, "Number of topologies")
      ->capture_default_str();
  rob_cmd->add_option("--n", rob_n, "Nodes per topology")->capture_default_str();
  rob_cmd->add_option("--algorithm", rob_algorithm, "Scheduler")->capture_default_str();
  rob_cmd->add_option("--threads", rob_threads, "Worker threads (0: all cores)")
      ->capture_default_str();
  rob_cmd->add_option("--output,-o", rob_out, "CSV (default stdout)");
  rob_family.add(rob_cmd);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Solve-time complexity fit");
  SolverArgs bench_solver;
  std::string bench_n = "5:50:5", bench_data_out, bench_fit_out;
  std::size_t bench_trials = 32, bench_repeats = 1, bench_degree = 4;
  bench_solver.algorithm = "ipa";
  bench_solver.add(bench_cmd);
  bench_cmd->add_option("--n-values", bench_n, "List or lo:hi:step")->capture_default_str();
  bench_cmd->add_option("--trials", bench_trials, "Topologies per N")->capture_default_str();
  bench_cmd->add_option("--repeats", bench_repeats, "Timed solves per topology")
      ->capture_default_str();
  bench_cmd->add_option("--degree-max", bench_degree, "Highest fitted degree")
      ->capture_default_str();
  bench_cmd->add_option("--data-output", bench_data_out, "Timing CSV (default stdout)");
  bench_cmd->add_option("--fit-output", bench_fit_out, "Fit CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    const rs::MessageParams p(common.tau_ns, common.mu);

    if (*gen) {
      rs::TopologyConfig tc;
      const auto fam = gen_family.get();
      tc.n = gen_n;
      tc.sigma_m = fam.sigma_m;
      tc.sigma_outlier_m = fam.sigma_outlier_m;
      tc.seed = common.seed;
      rs::Topology topo;
      if (fam.family == rs::Family::kMixture) {
        tc.outlier_prob = fam.outlier_prob;
        topo = rs::generate_mixture(tc);
      } else {
        topo = rs::generate_gaussian(tc);
      }
      emit(gen_out, [&](std::ostream& o) { rs::write_topology_csv(o, topo); });
      if (!gen_dist_out.empty()) {
        emit(gen_dist_out, [&](std::ostream& o) { rs::write_distance_csv(o, rs::distances(topo)); });
      }
      return kExitOk;
    }

    if (*solve_cmd) {
      const auto d = solve_in.load();
      const auto algo = rs::parse_algorithm(solve_args.algorithm);
      const auto out = rs::solve(algo, d, p, solve_args.options(common.seed));
      const auto rep = rs::evaluate(d, out.schedule, p);
      auto j = report_json(d, out.schedule, p, rep);
      j["algorithm"] = std::string(rs::to_string(algo));
      j["report_cycle_ns"] = out.report_cycle_ns;
      if (out.order) {
        j["order"] = out.order->nodes();
      }
      if (algo == rs::Algorithm::kIpa) {
        j["iterations"] = out.iterations;
      }
      emit(solve_out, [&](std::ostream& o) { o << j.dump(2) << "\n"; });
      if (!solve_schedule_out.empty()) {
        emit(solve_schedule_out, [&](std::ostream& o) { rs::write_schedule_csv(o, out.schedule); });
      }
      return rep.valid ? kExitOk : kExitInvalidSchedule;
    }

    if (*eval_cmd) {
      const auto d = eval_in.load();
      const auto s = rs::load_schedule(eval_schedule);
      if (s.size() != d.size()) {
        throw rs::InvalidInput("schedule has " + std::to_string(s.size()) +
                               " nodes but the instance has " + std::to_string(d.size()));
      }
      const auto rep = rs::evaluate(d, s, p);
      emit(eval_out, [&](std::ostream& o) { o << report_json(d, s, p, rep).dump(2) << "\n"; });
      return rep.valid ? kExitOk : kExitInvalidSchedule;
    }

    if (*sweep_cmd || *outlier_cmd) {
      const bool outlier = outlier_cmd->parsed();
      const SweepArgs& args = outlier ? outlier_args : sweep_args;
      const auto cfg = args.get(common);
      const auto result = outlier ? rs::run_outlier_sweep(cfg) : rs::run_sweep(cfg);
      emit(outlier ? outlier_out : sweep_out,
           [&](std::ostream& o) { rs::write_sweep_csv(o, result, !args.no_ticks); });
      if (!args.summary_file.empty()) {
        emit(args.summary_file,
             [&](std::ostream& o) { rs::write_summary_csv(o, rs::summarize(result)); });
      }
      return kExitOk;
    }

    if (*cdma_cmd) {
      const auto rows = rs::run_cdma_compare(cdma_args.get(common));
      emit(cdma_out, [&](std::ostream& o) { rs::write_cdma_csv(o, rows); });
      return kExitOk;
    }

    if (*rob_cmd) {
      rs::RobustnessSweepConfig cfg;
      cfg.n = rob_n;
      cfg.topologies = rob_topologies;
      cfg.topology = rob_family.get();
      cfg.sigma_e_values = parse_doubles(rob_sigma, "sigma_e");
      for (const double pt : parse_doubles(rob_p, "p_target")) {
        cfg.p_targets.push_back(pt == 0.0 ? std::nullopt : std::optional<double>(pt));
      }
      cfg.trials = rob_trials;
      cfg.algorithm = rs::parse_algorithm(rob_algorithm);
      cfg.tau_ns = common.tau_ns;
      cfg.mu_m_per_ns = common.mu;
      cfg.solve.tsp.seed = common.seed;
      cfg.seed = common.seed;
      cfg.threads = rob_threads;
      const auto rows = rs::run_robustness(cfg);
      emit(rob_out, [&](std::ostream& o) { rs::write_robustness_csv(o, rows); });
      return kExitOk;
    }

    if (*bench_cmd) {
      rs::BenchConfig cfg;
      cfg.algorithm = rs::parse_algorithm(bench_solver.algorithm);
      cfg.n_values = parse_n_values(bench_n);
      cfg.trials = bench_trials;
      cfg.repeats = bench_repeats;
      cfg.degree_max = bench_degree;
      cfg.tau_ns = common.tau_ns;
      cfg.mu_m_per_ns = common.mu;
      cfg.solve = bench_solver.options(common.seed);
      cfg.seed = common.seed;
      const auto result = rs::bench_complexity(cfg);
      emit(bench_data_out, [&](std::ostream& o) { rs::write_bench_data_csv(o, result); });
      emit(bench_fit_out, [&](std::ostream& o) { rs::write_bench_fit_csv(o, result); });
      return kExitOk;
    }
  } catch (const rs::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const rs::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
