#pragma once

#include <span>
#include <vector>

#include "flock/topology.hpp"

namespace flock {

/* Robustness of the influence edge (j -> i) of the nominal graph:
 * s(j, i) = ((dist to i's (m+1)-th closest other) - dist(i, j)) / 2.
 * Distances between agents may change by up to s(j, i) without j losing
 * its influence on i. Throws when (j -> i) is not a nominal edge. */
double edge_robustness(std::span<const double> positions, int dim, int m,
                       int j, int i);

/* Dense matrix of edge robustness values, NaN for non-edges. Entry
 * [i*n + j] is s(j, i). */
std::vector<double> edge_robustness_matrix(std::span<const double> positions,
                                           int dim, int m);

struct RootRobustness {
  double rho_r = 0.0;               // min over i != r of rho_ri; -inf if some i unreachable
  bool all_reachable = false;
  std::vector<double> bottleneck;   // rho_ri per node (+inf at r, -inf unreachable)
  std::vector<int> parent;          // witness tree realizing every bottleneck (-1 at r / unreachable)
};

/* Widest-path (max-min) bottleneck robustness of r as a spanning-tree root:
 * rho_ri is the best achievable minimum edge robustness over influence
 * paths r -> i. */
RootRobustness root_robustness(std::span<const double> positions, int dim, int m,
                               int root);

struct RobustnessReport {
  bool has_spanning_tree = false;   // false: nominal graph has no root reaching all nodes
  std::vector<double> edge_s;       // edge robustness matrix (n*n, NaN off-edges)
  std::vector<double> root_rho;     // rho_r per root (-inf when unreachable)
  double graph_rho = 0.0;           // rho_G = max_r rho_r
  int best_root = -1;               // lowest-index maximizer
  std::vector<int> co_optimal_roots;
  InteractionGraph core;            // H_{rho_G}, the core subgraph (valid when has_spanning_tree)
};

/* Full robustness analysis of the nominal graph at the given positions.
 * A missing spanning tree is reported as a state, not thrown. */
RobustnessReport graph_robustness(std::span<const double> positions, int dim, int m);

}  // namespace flock
