#pragma once

#include <random>
#include <vector>

#include "flock/model.hpp"
#include "flock/topology.hpp"

namespace fixtures {

/* Four agents on a vertical line, the standing reference scenario used
 * throughout the tests: m = 1, nominal in-adjacency
 * (0 1 0 0; 1 0 0 0; 0 1 0 0; 0 0 1 0), graph robustness 0.1. */
inline std::vector<double> line4_positions() {
  return {0.0, 2.7, 0.0, 2.5, 0.0, 1.5, 0.0, 0.0};
}

/* Unit velocity pattern of the reference scenario; diameter 2. */
inline std::vector<double> line4_pattern() {
  return {0.0, 1.0, 0.0, 1.0, 0.0, -1.0, 0.0, 1.0};
}

/* Reference configuration with velocities scale * pattern + (drift, 0),
 * so the initial velocity diameter is exactly 2 * scale. */
inline flock::Configuration line4_configuration(double scale, double drift = 1.0) {
  std::vector<double> v = line4_pattern();
  for (std::size_t k = 0; k < v.size(); k += 2) {
    v[k] = scale * v[k] + drift;
    v[k + 1] = scale * v[k + 1];
  }
  return flock::Configuration(2, 1, line4_positions(), std::move(v));
}

inline std::vector<double> random_positions(std::mt19937& rng, int n, int dim,
                                            double extent = 10.0) {
  std::uniform_real_distribution<double> coord(0.0, extent);
  std::vector<double> positions(static_cast<std::size_t>(n) * dim);
  for (double& p : positions) p = coord(rng);
  return positions;
}

inline std::vector<double> random_velocities(std::mt19937& rng, int n, int dim,
                                             double extent = 1.0) {
  std::uniform_real_distribution<double> coord(-extent, extent);
  std::vector<double> velocities(static_cast<std::size_t>(n) * dim);
  for (double& v : velocities) v = coord(rng);
  return velocities;
}

/* Independent nominal-graph oracle: edge (j -> i) iff fewer than m other
 * agents are lexicographically (distance, index)-closer to i than j. */
inline flock::InteractionGraph knn_oracle(const std::vector<double>& positions,
                                          int dim, int m) {
  const int n = static_cast<int>(positions.size()) / dim;
  auto dist = [&](int a, int b) {
    double acc = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double d = positions[static_cast<std::size_t>(a) * dim + c] -
                       positions[static_cast<std::size_t>(b) * dim + c];
      acc += d * d;
    }
    return std::sqrt(acc);
  };
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      int closer = 0;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double dk = dist(i, k);
        const double dj = dist(i, j);
        if (dk < dj || (dk == dj && k < j)) ++closer;
      }
      if (closer < m) adj[static_cast<std::size_t>(i) * n + j] = 1;
    }
  }
  return flock::InteractionGraph::from_adjacency(n, m, flock::GraphKind::Nominal,
                                                 std::move(adj));
}

/* Builds a graph from explicit influence edges (j -> i pairs). */
inline flock::InteractionGraph graph_from_edges(
    int n, int m, flock::GraphKind kind,
    const std::vector<std::pair<int, int>>& edges_j_to_i) {
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  for (const auto& [j, i] : edges_j_to_i) {
    adj[static_cast<std::size_t>(i) * n + j] = 1;
  }
  return flock::InteractionGraph::from_adjacency(n, m, kind, std::move(adj));
}

}  // namespace fixtures
