#pragma once

#include <string>
#include <vector>

#include "flock/topology.hpp"

namespace flock {

/* Layered structure induced by a rooted spanning tree of an interaction
 * graph H: layer k holds the nodes at influence distance k from the root,
 * nested[k] is the union of layers 0..k, and flows[k-1] is the minimum
 * number of in-edges a node of nested[k] receives from nested[k-1]
 * (computed on H's adjacency).
 *
 * flows entries are >= 1 for hierarchies whose root keeps an in-edge
 * inside every nested set; a root stripped of its in-edges yields a zero
 * flow, which downstream scheduling treats as a degenerate (zero-gain)
 * layer. */
struct Hierarchy {
  int root = -1;
  int depth = 0;                             // D
  std::vector<std::vector<int>> layers;      // SS_0..SS_D, each sorted ascending
  std::vector<std::vector<int>> nested;      // U_0..U_D
  std::vector<int> flows;                    // alpha_1..alpha_{D-1}
  std::vector<int> layer_of;                 // node -> layer index

  bool in_nested(int node, int k) const { return layer_of[node] <= k; }
};

struct HierarchyResult {
  bool ok = false;
  Hierarchy hierarchy;
  std::string error;   // "no spanning tree from this root" style message when !ok
};

/* Breadth-first layer construction from `root` over H's influence edges.
 * Fails (without throwing) when some node is unreachable. */
HierarchyResult build_hierarchy(const InteractionGraph& h, int root);

struct HypothesisCheck {
  bool satisfied = true;
  int violation_layer = -1;   // k of the first violated clause (0 = root-edge clause)
  int violation_agent = -1;
  std::string what;
};

/* Checks that graph g preserves the hierarchy's flow structure:
 * (a) every node of layer 1 is influenced by the root, and
 * (b) for k in 1..D-1 every node of nested[k+1] has at least flows[k-1]
 *     in-edges from nested[k] and at most m - flows[k-1] from outside.
 * Both inequalities of (b) are checked independently, so non-m-regular
 * graphs are caught. The first violation in (k, then agent) order is
 * reported. */
HypothesisCheck check_hierarchy_hypothesis(const InteractionGraph& g,
                                           const Hierarchy& hierarchy);

}  // namespace flock
