#include "flock/hierarchy.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace flock {

HierarchyResult build_hierarchy(const InteractionGraph& h, int root) {
  const int n = h.node_count();
  if (root < 0 || root >= n) throw std::invalid_argument("root index out of range");

  HierarchyResult result;
  Hierarchy& hier = result.hierarchy;
  hier.root = root;
  hier.layer_of.assign(n, -1);
  hier.layer_of[root] = 0;
  hier.layers.push_back({root});

  int placed = 1;
  while (placed < n) {
    const std::vector<int>& frontier = hier.layers.back();
    std::vector<int> next;
    for (int i = 0; i < n; ++i) {
      if (hier.layer_of[i] != -1) continue;
      for (int j : frontier) {
        if (h.a(i, j)) {  // i is an out-neighbor of the current layer
          next.push_back(i);
          break;
        }
      }
    }
    if (next.empty()) {
      result.ok = false;
      result.error = "no spanning tree from root " + std::to_string(root + 1) + ": " +
                     std::to_string(n - placed) + " node(s) unreachable";
      return result;
    }
    for (int i : next) hier.layer_of[i] = static_cast<int>(hier.layers.size());
    placed += static_cast<int>(next.size());
    hier.layers.push_back(std::move(next));
  }

  hier.depth = static_cast<int>(hier.layers.size()) - 1;
  hier.nested.resize(hier.layers.size());
  std::vector<int> acc;
  for (std::size_t k = 0; k < hier.layers.size(); ++k) {
    acc.insert(acc.end(), hier.layers[k].begin(), hier.layers[k].end());
    std::sort(acc.begin(), acc.end());
    hier.nested[k] = acc;
  }

  // Layer flows on H's own adjacency: minimum in-weight a node of U_{k+1}
  // collects from U_k. The minimum ranges over all of U_{k+1}; a root with
  // no surviving in-edges therefore produces a zero flow.
  for (int k = 1; k <= hier.depth - 1; ++k) {
    int alpha = h.neighbor_count();
    for (int i : hier.nested[k + 1]) {
      int weight = 0;
      for (int j : hier.nested[k]) {
        if (h.a(i, j)) ++weight;
      }
      alpha = std::min(alpha, weight);
    }
    hier.flows.push_back(alpha);
  }

  result.ok = true;
  return result;
}

HypothesisCheck check_hierarchy_hypothesis(const InteractionGraph& g,
                                           const Hierarchy& hierarchy) {
  const int n = g.node_count();
  if (n != static_cast<int>(hierarchy.layer_of.size())) {
    throw std::invalid_argument("hypothesis check: graph and hierarchy node sets differ");
  }
  const int m = g.neighbor_count();

  HypothesisCheck check;
  // Clause (a): every layer-1 node keeps its influence edge from the root.
  if (hierarchy.depth >= 1) {
    for (int i : hierarchy.layers[1]) {
      if (!g.a(i, hierarchy.root)) {
        check.satisfied = false;
        check.violation_layer = 0;
        check.violation_agent = i;
        check.what = "agent " + std::to_string(i + 1) + " lost its edge from the root";
        return check;
      }
    }
  }
  // Clause (b): flow bounds into every nested set, both directions checked.
  for (int k = 1; k <= hierarchy.depth - 1; ++k) {
    const int alpha = hierarchy.flows[k - 1];
    for (int i : hierarchy.nested[k + 1]) {
      int inside = 0;
      int outside = 0;
      for (int j = 0; j < n; ++j) {
        if (!g.a(i, j)) continue;
        if (hierarchy.in_nested(j, k)) {
          ++inside;
        } else {
          ++outside;
        }
      }
      if (inside < alpha || outside > m - alpha) {
        check.satisfied = false;
        check.violation_layer = k;
        check.violation_agent = i;
        check.what = "agent " + std::to_string(i + 1) + " violates the layer-" +
                     std::to_string(k) + " flow bound (" + std::to_string(inside) +
                     " inside, " + std::to_string(outside) + " outside, flow " +
                     std::to_string(alpha) + ")";
        return check;
      }
    }
  }
  return check;
}

}  // namespace flock
