#include "doctest.h"

#include <cmath>
#include <sstream>

#include "fixtures.h"
#include "rangesched/error.h"
#include "rangesched/io.h"
#include "rangesched/rng.h"
#include "rangesched/topology.h"

using namespace rangesched;

namespace {

TopologyConfig cfg_of(std::size_t n, double sigma, std::uint64_t seed) {
  TopologyConfig c;
  c.n = n;
  c.sigma_m = sigma;
  c.seed = seed;
  return c;
}

} // namespace

TEST_CASE("gaussian: six nodes, coordinate spread near sigma over many draws") {
  double ss = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto topo = generate_gaussian(cfg_of(6, 5.0, seed));
    REQUIRE(topo.size() == 6);
    for (const auto& pt : topo.positions) {
      ss += pt.x_m * pt.x_m + pt.y_m * pt.y_m;
      count += 2;
    }
  }
  CHECK(std::sqrt(ss / static_cast<double>(count)) == doctest::Approx(5.0).epsilon(0.03));
}

TEST_CASE("gaussian: tiny sigma gives nearly coincident points") {
  const auto d = distances(generate_gaussian(cfg_of(2, 1e-9, 3)));
  CHECK(d(0, 1) < 1e-7);
}

TEST_CASE("gaussian: n=1000 empirical variance within 5% of sigma^2") {
  const auto topo = generate_gaussian(cfg_of(1000, 5.0, 42));
  double sx = 0, sxx = 0;
  for (const auto& pt : topo.positions) {
    for (const double v : {pt.x_m, pt.y_m}) {
      sx += v;
      sxx += v * v;
    }
  }
  const double m = 2000.0;
  const double var = (sxx - sx * sx / m) / (m - 1.0);
  CHECK(var == doctest::Approx(25.0).epsilon(0.05));
}

TEST_CASE("gaussian: rejects invalid configs") {
  CHECK_THROWS_AS(generate_gaussian(cfg_of(1, 5.0, 0)), InvalidInput);
  CHECK_THROWS_AS(generate_gaussian(cfg_of(4, 0.0, 0)), InvalidInput);
  CHECK_THROWS_AS(generate_gaussian(cfg_of(4, -1.0, 0)), InvalidInput);
  auto c = cfg_of(4, 5.0, 0);
  c.outlier_prob = 0.2;
  CHECK_THROWS_AS(generate_gaussian(c), InvalidInput);
}

TEST_CASE("gaussian: reproducible bit for bit") {
  const auto a = generate_gaussian(cfg_of(30, 5.0, 99));
  const auto b = generate_gaussian(cfg_of(30, 5.0, 99));
  std::ostringstream sa, sb;
  write_topology_csv(sa, a);
  write_topology_csv(sb, b);
  CHECK(sa.str() == sb.str());
  const auto c = generate_gaussian(cfg_of(30, 5.0, 100));
  std::ostringstream sc;
  write_topology_csv(sc, c);
  CHECK(sa.str() != sc.str());
}

TEST_CASE("mixture: six-node outlier family instance") {
  TopologyConfig c = cfg_of(6, 5.0, 7);
  c.sigma_outlier_m = 30.0;
  c.outlier_prob = 1.0 / 3.0;
  const auto topo = generate_mixture(c);
  CHECK(topo.size() == 6);
  CHECK(topo.outlier.size() == 6);
}

TEST_CASE("mixture: outlier_prob 0 collapses to the gaussian generator") {
  TopologyConfig c = cfg_of(25, 5.0, 1234);
  c.sigma_outlier_m = 30.0;
  const auto g = generate_gaussian(c);
  const auto m = generate_mixture(c);
  REQUIRE(g.size() == m.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g.positions[i].x_m == m.positions[i].x_m);
    CHECK(g.positions[i].y_m == m.positions[i].y_m);
  }
}

TEST_CASE("mixture: outlier fraction over 3000 nodes within 2% of 1/3") {
  TopologyConfig c = cfg_of(3000, 5.0, 5);
  c.sigma_outlier_m = 30.0;
  c.outlier_prob = 1.0 / 3.0;
  const auto topo = generate_mixture(c);
  std::size_t out = 0;
  for (const auto o : topo.outlier) {
    out += o;
  }
  CHECK(std::abs(static_cast<double>(out) / 3000.0 - 1.0 / 3.0) <= 0.02);
}

TEST_CASE("mixture: outlier rate within 3 standard errors over 10^4 nodes") {
  for (const double p : {0.1, 1.0 / 3.0, 0.7}) {
    TopologyConfig c = cfg_of(10000, 5.0, 77);
    c.sigma_outlier_m = 30.0;
    c.outlier_prob = p;
    const auto topo = generate_mixture(c);
    double out = 0;
    for (const auto o : topo.outlier) {
      out += o;
    }
    const double se = std::sqrt(p * (1 - p) / 10000.0);
    CHECK(std::abs(out / 10000.0 - p) <= 3 * se);
  }
}

TEST_CASE("mixture: outlier spread uses sigma_o") {
  TopologyConfig c = cfg_of(20000, 5.0, 8);
  c.sigma_outlier_m = 30.0;
  c.outlier_prob = 0.5;
  const auto topo = generate_mixture(c);
  double ss_in = 0, ss_out = 0, n_in = 0, n_out = 0;
  for (std::size_t i = 0; i < topo.size(); ++i) {
    const double r2 = topo.positions[i].x_m * topo.positions[i].x_m +
                      topo.positions[i].y_m * topo.positions[i].y_m;
    (topo.outlier[i] ? ss_out : ss_in) += r2;
    (topo.outlier[i] ? n_out : n_in) += 2;
  }
  CHECK(std::sqrt(ss_in / n_in) == doctest::Approx(5.0).epsilon(0.03));
  CHECK(std::sqrt(ss_out / n_out) == doctest::Approx(30.0).epsilon(0.03));
}

TEST_CASE("mixture: config validation") {
  TopologyConfig c = cfg_of(5, 5.0, 1);
  c.outlier_prob = 1.5;
  CHECK_THROWS_AS(generate_mixture(c), InvalidInput);
  c.outlier_prob = 0.3;
  c.sigma_outlier_m = 2.0;
  CHECK_THROWS_AS(generate_mixture(c), InvalidInput);
}

TEST_CASE("distances: three-node example pairs") {
  Topology topo;
  // A at origin, B on the x axis, C placed by the law of cosines.
  const double ab = 9.5, bc = 11.0, ac = 10.5;
  const double cx = (ab * ab + ac * ac - bc * bc) / (2 * ab);
  topo.positions = {{0, 0}, {ab, 0}, {cx, std::sqrt(ac * ac - cx * cx)}};
  const auto d = distances(topo);
  CHECK(d(0, 1) == doctest::Approx(9.5));
  CHECK(d(1, 2) == doctest::Approx(11.0));
  CHECK(d(0, 2) == doctest::Approx(10.5));
  CHECK(d.max_distance() == doctest::Approx(11.0));
}

TEST_CASE("distances: identical points") {
  Topology topo;
  topo.positions = {{1.5, -2.0}, {1.5, -2.0}};
  const auto d = distances(topo);
  CHECK(d(0, 1) == 0.0);
  CHECK(d(1, 0) == 0.0);
}

TEST_CASE("distances: symmetric with zero diagonal") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto d = fixtures::gaussian_instance(10, seed);
    for (std::size_t i = 0; i < 10; ++i) {
      CHECK(d(i, i) == 0.0);
      for (std::size_t j = 0; j < 10; ++j) {
        CHECK(d(i, j) == d(j, i));
      }
    }
  }
}

TEST_CASE("distances: rejects non-finite coordinates") {
  Topology topo;
  topo.positions = {{0, 0}, {std::nan(""), 1}};
  CHECK_THROWS_AS(distances(topo), InvalidInput);
  topo.positions = {{0, 0}};
  CHECK_THROWS_AS(distances(topo), InvalidInput);
}

TEST_CASE("from_distances: validation") {
  CHECK_NOTHROW(from_distances(2, {0, 3, 3, 0}));
  CHECK_NOTHROW(from_distances(2, {0, 3, 3 * (1 + 1e-12), 0}));
  CHECK_THROWS_AS(from_distances(2, {0, 3, 3.1, 0}), InvalidInput);
  CHECK_THROWS_AS(from_distances(2, {0, -3, -3, 0}), InvalidInput);
  CHECK_THROWS_AS(from_distances(2, {1, 3, 3, 0}), InvalidInput);
  CHECK_THROWS_AS(from_distances(2, {0, 3, 3}), InvalidInput);
  CHECK_THROWS_AS(from_distances(1, {0}), InvalidInput);
  // No triangle inequality required.
  CHECK_NOTHROW(from_distances(3, {0, 1, 10, 1, 0, 1, 10, 1, 0}));
}

TEST_CASE("rng: derived streams differ and are stable") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {0}) != derive_seed(2, {0}));
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) {
    CHECK(a.normal() == b.normal());
  }
  Rng u(9);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}
