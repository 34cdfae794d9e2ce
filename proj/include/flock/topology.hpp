#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace flock {

enum class GraphKind : std::uint8_t {
  Nominal,        // G_x: exactly m in-neighbors per agent
  PerturbedCore,  // H_rho: the subgraph surviving distance disturbances up to rho
};

/* Directed interaction graph stored as a dense in-adjacency matrix:
 * a(i, j) is true when agent j influences agent i. Immutable after
 * construction. */
class InteractionGraph {
 public:
  InteractionGraph() = default;

  /* Validates shape, absence of self-loops, and the per-kind in-degree
   * contract (exactly m for Nominal, at most m for PerturbedCore). */
  static InteractionGraph from_adjacency(int n, int m, GraphKind kind,
                                         std::vector<std::uint8_t> in_adjacency);

  bool a(int i, int j) const { return adj_[static_cast<std::size_t>(i) * n_ + j] != 0; }
  int node_count() const { return n_; }
  int neighbor_count() const { return m_; }
  GraphKind kind() const { return kind_; }

  int in_degree(int i) const;
  int edge_count() const;
  /* Number of adjacency entries that differ from `other`. */
  int edge_difference(const InteractionGraph& other) const;

  /* True when every node is reachable from `root` along influence edges
   * (j -> i traversal follows a(i, j)). */
  bool reaches_all(int root) const;
  /* Lowest-index root reaching all nodes, or -1 when none exists. */
  int spanning_root() const;

  bool operator==(const InteractionGraph& other) const = default;

  const std::vector<std::uint8_t>& raw() const { return adj_; }

 private:
  int n_ = 0;
  int m_ = 0;
  GraphKind kind_ = GraphKind::Nominal;
  std::vector<std::uint8_t> adj_;
};

/* Nominal topological interaction graph: edge (j -> i) present iff j is
 * among the m closest other agents of i. Ties in distance are broken by
 * ascending agent index, so the result is always exactly m-regular. */
InteractionGraph knn_graph(std::span<const double> positions, int dim, int m);

/* Subgraph of the nominal graph guaranteed to survive any disturbance of
 * pairwise relative positions bounded by rho: edge (j -> i) kept iff
 * |{k not in {i,j} : ||x_i-x_j|| > ||x_i-x_k|| - 2 rho}| < m. Restricted
 * to nominal edges so the result is contained in knn_graph even on
 * tie-degenerate inputs. rho = 0 reproduces the nominal graph. */
InteractionGraph perturbed_core_graph(std::span<const double> positions, int dim,
                                      int m, double rho);

/* True iff every edge of h is an edge of g. Throws on node-count mismatch. */
bool is_subgraph(const InteractionGraph& h, const InteractionGraph& g);

}  // namespace flock
