#include "doctest.h"

#include "fixtures.h"
#include "rangesched/convex.h"
#include "rangesched/error.h"
#include "rangesched/grid_search.h"

using namespace rangesched;

TEST_CASE("grid: three-node example at 0.1 ns") {
  const auto r = grid_search(fixtures::three_node(), fixtures::three_node_params());
  CHECK(r.schedule[0] == 0.0);
  CHECK(r.schedule[1] == doctest::Approx(8.4));
  CHECK(r.schedule[2] == doctest::Approx(15.0));
  CHECK(r.report_cycle_ns ==
        doctest::Approx(report_cycle(fixtures::three_node(), r.schedule, fixtures::three_node_params())));
  CHECK_FALSE(r.bound_extended);
}

TEST_CASE("grid: sampled-time result overlaps by less than one step per pair") {
  const auto d = fixtures::three_node();
  const auto p = fixtures::three_node_params();
  const auto r = grid_search(d, p);
  const auto arr = arrival_intervals(d, r.schedule, p);
  for (const auto& rx : arr) {
    for (std::size_t a = 0; a < rx.size(); ++a) {
      for (std::size_t b = a + 1; b < rx.size(); ++b) {
        const double ov = std::min(rx[a].end_ns, rx[b].end_ns) - std::max(rx[a].start_ns, rx[b].start_ns);
        CHECK(ov < 0.1);
      }
    }
  }
}

TEST_CASE("grid: exact timing on three-node example") {
  GridSearchConfig cfg;
  cfg.timing = GridTiming::kExact;
  const auto r = grid_search(fixtures::three_node(), fixtures::three_node_params(), cfg);
  CHECK(r.schedule[1] == doctest::Approx(8.4));
  CHECK(r.schedule[2] == doctest::Approx(15.1));
  CHECK(evaluate(fixtures::three_node(), r.schedule, fixtures::three_node_params()).valid);
}

TEST_CASE("grid: N=2") {
  const auto d = from_distances(2, {0, 4.5, 4.5, 0});
  const MessageParams p(10.0);
  const auto r = grid_search(d, p);
  CHECK(r.schedule[0] == 0.0);
  CHECK(r.schedule[1] == 0.0);
  CHECK(r.report_cycle_ns == doctest::Approx(4.5 / 0.3 + 10.0));
}

TEST_CASE("grid: errors") {
  GridSearchConfig cfg;
  cfg.step_ns = 0.0;
  CHECK_THROWS_AS(grid_search(fixtures::three_node(), fixtures::three_node_params(), cfg), InvalidInput);
  cfg.step_ns = 1.0;
  CHECK_THROWS_AS(grid_search(fixtures::gaussian_instance(6, 1), MessageParams(10.0), cfg),
                  InvalidInput);
  cfg.max_delay_ns = -1.0;
  CHECK_THROWS_AS(grid_search(fixtures::three_node(), fixtures::three_node_params(), cfg), InvalidInput);
}

TEST_CASE("grid: co-located nodes need the bound extension") {
  // T_D = tau, but three co-located nodes need delays 0, tau, 2 tau.
  const auto d = from_distances(3, std::vector<double>(9, 0.0));
  GridSearchConfig cfg;
  cfg.step_ns = 1.0;
  cfg.timing = GridTiming::kExact;
  const auto r = grid_search(d, MessageParams(10.0), cfg);
  CHECK(r.bound_extended);
  CHECK(r.bound_ns == doctest::Approx(20.0));
  CHECK(r.report_cycle_ns == doctest::Approx(30.0));
  CHECK(evaluate(d, r.schedule, MessageParams(10.0)).valid);

  const auto four = from_distances(4, std::vector<double>(16, 0.0));
  CHECK_THROWS_AS(grid_search(four, MessageParams(10.0), cfg), SolverError);
}

TEST_CASE("grid: random N=3 matches best CA order within grid slack") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto d = fixtures::gaussian_instance(3, seed + 900);
    const MessageParams p(10.0);
    GridSearchConfig cfg;
    cfg.step_ns = 0.1;
    cfg.max_delay_ns = 3 * max_path_delay(d, p) - p.tau_ns();
    const auto grid = grid_search(d, p, cfg);
    const auto best = best_over_orders(d, p, all_orders(3));
    CHECK(grid.report_cycle_ns <= best.report_cycle_ns + 0.2 + 1e-9);
    CHECK(best.report_cycle_ns <= grid.report_cycle_ns + 0.2 + 1e-9);
  }
}

TEST_CASE("grid: exact timing always valid, halving the step never raises T_R") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto d = fixtures::gaussian_instance(3, seed + 40);
    const MessageParams p(10.0);
    double prev = 1e300;
    for (const double step : {0.8, 0.4, 0.2, 0.1}) {
      GridSearchConfig cfg;
      cfg.step_ns = step;
      cfg.timing = GridTiming::kExact;
      cfg.max_delay_ns = 3 * max_path_delay(d, p);
      const auto r = grid_search(d, p, cfg);
      CHECK(evaluate(d, r.schedule, p).valid);
      CHECK(r.report_cycle_ns <= prev + 1e-9);
      prev = r.report_cycle_ns;
    }
  }
}

TEST_CASE("grid: lexicographically smallest among ties") {
  // Equilateral triangle: every permutation of (0, tau, 2 tau) ties.
  const auto d = fixtures::equilateral(3.0);
  GridSearchConfig cfg;
  cfg.step_ns = 1.0;
  cfg.timing = GridTiming::kExact;
  cfg.max_delay_ns = 30.0;
  const auto r = grid_search(d, MessageParams(10.0), cfg);
  CHECK(r.schedule[0] == 0.0);
  CHECK(r.schedule[1] == doctest::Approx(10.0));
  CHECK(r.schedule[2] == doctest::Approx(20.0));
}
