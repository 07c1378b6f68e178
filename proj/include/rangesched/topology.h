#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rangesched {

// 0-based node label, contiguous in 0..N-1 within a topology.
using NodeId = std::size_t;

struct Point {
  double x_m = 0.0;
  double y_m = 0.0;
};

/// Planar node placement.
///
/// `outlier` is only populated by generate_mixture() and records which
/// component each node was drawn from; it is empty otherwise.
struct Topology {
  std::vector<Point> positions;
  std::vector<std::uint8_t> outlier;

  std::size_t size() const { return positions.size(); }
};

// Throws InvalidInput unless there are at least two nodes and every
// coordinate is finite.
void validate(const Topology& topo);

/// Symmetric pairwise distance matrix in meters with a zero diagonal.
///
/// Instances only come out of distances() or from_distances(), so every
/// DistanceMatrix in circulation satisfies those invariants.
class DistanceMatrix {
public:
  std::size_t size() const { return n_; }

  double operator()(NodeId k, NodeId i) const { return d_[k * n_ + i]; }

  // Largest off-diagonal entry (D in the maximum path delay).
  double max_distance() const;

  std::span<const double> row(NodeId k) const {
    return {d_.data() + k * n_, n_};
  }

  std::span<const double> data() const { return d_; }

  friend DistanceMatrix distances(const Topology& topo);
  friend DistanceMatrix from_distances(std::size_t n, std::vector<double> d);

private:
  DistanceMatrix(std::size_t n, std::vector<double> d) : n_(n), d_(std::move(d)) {}

  std::size_t n_ = 0;
  std::vector<double> d_;
};

// Euclidean pairwise distances of a validated topology.
DistanceMatrix distances(const Topology& topo);

/// Accepts an externally measured row-major n×n range matrix.
///
/// Rejects n < 2, non-finite or negative entries, a nonzero diagonal, and
/// asymmetry beyond a relative 1e-9. The triangle inequality is not
/// required. Entries within tolerance are stored as given.
DistanceMatrix from_distances(std::size_t n, std::vector<double> d);

struct TopologyConfig {
  std::size_t n = 0;
  double sigma_m = 5.0;
  double sigma_outlier_m = 30.0;
  double outlier_prob = 0.0;
  std::uint64_t seed = 0;
};

// Throws InvalidInput on n < 2, sigma <= 0, outlier_prob outside [0, 1],
// or sigma_outlier < sigma while outlier_prob > 0.
void validate(const TopologyConfig& cfg);

// i.i.d. x, y ~ Normal(0, sigma^2). Requires cfg.outlier_prob == 0.
Topology generate_gaussian(const TopologyConfig& cfg);

// Each node comes from Normal(0, sigma_outlier^2) with probability
// outlier_prob, else Normal(0, sigma^2). Component membership is drawn from
// a separate stream, so outlier_prob = 0 reproduces generate_gaussian().
Topology generate_mixture(const TopologyConfig& cfg);

} // namespace rangesched
