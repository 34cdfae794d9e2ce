#include "flock/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "flock/topology.hpp"

namespace flock {

namespace {

void require_finite(const std::vector<double>& values, const char* field) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(field) + " contains a non-finite component");
    }
  }
}

double pair_distance(std::span<const double> v, int dim, int i, int j) {
  double acc = 0.0;
  const double* a = v.data() + static_cast<std::size_t>(i) * dim;
  const double* b = v.data() + static_cast<std::size_t>(j) * dim;
  for (int c = 0; c < dim; ++c) {
    const double d = a[c] - b[c];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

Configuration::Configuration(int dim, int m, std::vector<double> pos, std::vector<double> vel)
    : dimension(dim), neighbor_count(m), positions(std::move(pos)), velocities(std::move(vel)) {
  if (dimension < 1) throw std::invalid_argument("dimension must be positive");
  if (neighbor_count < 1) throw std::invalid_argument("m must be positive");
  if (positions.size() % dimension != 0) {
    throw std::invalid_argument("positions length is not a multiple of dimension");
  }
  if (velocities.size() != positions.size()) {
    throw std::invalid_argument("positions and velocities disagree in length");
  }
  const int n = agent_count();
  if (n < neighbor_count + 2) {
    throw std::invalid_argument("need at least m + 2 agents, got " + std::to_string(n) +
                                " with m = " + std::to_string(neighbor_count));
  }
  require_finite(positions, "positions");
  require_finite(velocities, "velocities");
}

double velocity_diameter(std::span<const double> velocities, int dim,
                         std::span<const int> subset) {
  if (subset.empty()) throw std::invalid_argument("velocity_diameter: empty subset");
  const int n = static_cast<int>(velocities.size()) / dim;
  for (int idx : subset) {
    if (idx < 0 || idx >= n) throw std::invalid_argument("velocity_diameter: index out of range");
  }
  double best = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      best = std::max(best, pair_distance(velocities, dim, subset[a], subset[b]));
    }
  }
  return best;
}

double velocity_diameter(std::span<const double> velocities, int dim) {
  const int n = static_cast<int>(velocities.size()) / dim;
  double best = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      best = std::max(best, pair_distance(velocities, dim, a, b));
    }
  }
  return best;
}

void dynamics_rhs(std::span<const double> positions, std::span<const double> velocities,
                  int dim, const InteractionGraph& graph,
                  std::span<double> dx, std::span<double> dv) {
  const int n = graph.node_count();
  const std::size_t len = static_cast<std::size_t>(n) * dim;
  if (positions.size() != len || velocities.size() != len ||
      dx.size() != len || dv.size() != len) {
    throw std::invalid_argument("dynamics_rhs: shape mismatch between state and graph");
  }
  for (std::size_t c = 0; c < len; ++c) dx[c] = velocities[c];
  for (int i = 0; i < n; ++i) {
    double* out = dv.data() + static_cast<std::size_t>(i) * dim;
    const double* vi = velocities.data() + static_cast<std::size_t>(i) * dim;
    for (int c = 0; c < dim; ++c) out[c] = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!graph.a(i, j)) continue;
      const double* vj = velocities.data() + static_cast<std::size_t>(j) * dim;
      for (int c = 0; c < dim; ++c) out[c] += vj[c] - vi[c];
    }
  }
}

}  // namespace flock
