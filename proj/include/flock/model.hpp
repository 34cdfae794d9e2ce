#pragma once

#include <span>
#include <vector>

namespace flock {

/* Initial data of a group of agents with velocity-coupled second-order
 * dynamics. Positions and velocities are flat length n*d arrays with
 * row-major agent blocks (agent i occupies [i*d, (i+1)*d)). Agent indices
 * are 0-based in the API; documents and CLI output use 1-based labels. */
struct Configuration {
  int dimension = 0;                // d
  int neighbor_count = 0;           // m, in-degree of the interaction rule
  std::vector<double> positions;    // n*d
  std::vector<double> velocities;   // n*d

  Configuration() = default;
  Configuration(int dim, int m, std::vector<double> pos, std::vector<double> vel);

  int agent_count() const { return dimension > 0 ? static_cast<int>(positions.size()) / dimension : 0; }
};

/* Snapshot of the group at a point in time. Same layout as Configuration. */
struct State {
  double time = 0.0;
  std::vector<double> positions;
  std::vector<double> velocities;
};

/* Max pairwise Euclidean velocity distance over a subset of agents.
 * Singleton subsets give 0. Throws on an empty subset or an index out
 * of range. */
double velocity_diameter(std::span<const double> velocities, int dim,
                         std::span<const int> subset);

/* Diameter over all agents. */
double velocity_diameter(std::span<const double> velocities, int dim);

class InteractionGraph;

/* Right-hand side of the coupled dynamics: dx_i = v_i,
 * dv_i = sum_j a_ij (v_j - v_i). The graph is expected to be the nominal
 * (m-regular) interaction graph; only shape mismatches are rejected. */
void dynamics_rhs(std::span<const double> positions, std::span<const double> velocities,
                  int dim, const InteractionGraph& graph,
                  std::span<double> dx, std::span<double> dv);

}  // namespace flock
