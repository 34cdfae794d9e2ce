#include "flock/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace flock {

namespace {

std::vector<double> distance_matrix(std::span<const double> positions, int dim, int n) {
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double acc = 0.0;
      const double* a = positions.data() + static_cast<std::size_t>(i) * dim;
      const double* b = positions.data() + static_cast<std::size_t>(j) * dim;
      for (int c = 0; c < dim; ++c) {
        const double diff = a[c] - b[c];
        acc += diff * diff;
      }
      const double dist = std::sqrt(acc);
      d[static_cast<std::size_t>(i) * n + j] = dist;
      d[static_cast<std::size_t>(j) * n + i] = dist;
    }
  }
  return d;
}

void validate_positions(std::span<const double> positions, int dim, int m) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (positions.size() % dim != 0) {
    throw std::invalid_argument("positions length is not a multiple of dimension");
  }
  const int n = static_cast<int>(positions.size()) / dim;
  // n = m + 1 is allowed here and yields the complete digraph; the
  // robustness definitions additionally need an (m+1)-th closest other and
  // check n >= m + 2 themselves.
  if (n < m + 1) {
    throw std::invalid_argument("every agent needs m = " + std::to_string(m) +
                                " other agents, got n = " + std::to_string(n));
  }
  for (double v : positions) {
    if (!std::isfinite(v)) throw std::invalid_argument("positions contain a non-finite component");
  }
}

}  // namespace

InteractionGraph InteractionGraph::from_adjacency(int n, int m, GraphKind kind,
                                                  std::vector<std::uint8_t> in_adjacency) {
  if (n < 1 || m < 1) throw std::invalid_argument("graph needs positive n and m");
  if (in_adjacency.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("adjacency size does not match node count");
  }
  InteractionGraph g;
  g.n_ = n;
  g.m_ = m;
  g.kind_ = kind;
  g.adj_ = std::move(in_adjacency);
  for (int i = 0; i < n; ++i) {
    if (g.a(i, i)) throw std::invalid_argument("self-loop in adjacency row " + std::to_string(i));
    const int deg = g.in_degree(i);
    if (kind == GraphKind::Nominal && deg != m) {
      throw std::invalid_argument("nominal graph row " + std::to_string(i) +
                                  " has in-degree " + std::to_string(deg) +
                                  ", expected " + std::to_string(m));
    }
    if (kind == GraphKind::PerturbedCore && deg > m) {
      throw std::invalid_argument("core graph row " + std::to_string(i) +
                                  " exceeds in-degree " + std::to_string(m));
    }
  }
  return g;
}

int InteractionGraph::in_degree(int i) const {
  const std::uint8_t* row = adj_.data() + static_cast<std::size_t>(i) * n_;
  return static_cast<int>(std::accumulate(row, row + n_, 0));
}

int InteractionGraph::edge_count() const {
  return static_cast<int>(std::accumulate(adj_.begin(), adj_.end(), 0));
}

int InteractionGraph::edge_difference(const InteractionGraph& other) const {
  if (other.n_ != n_) throw std::invalid_argument("edge_difference: node-count mismatch");
  int diff = 0;
  for (std::size_t k = 0; k < adj_.size(); ++k) diff += adj_[k] != other.adj_[k];
  return diff;
}

bool InteractionGraph::reaches_all(int root) const {
  if (root < 0 || root >= n_) throw std::invalid_argument("root index out of range");
  std::vector<std::uint8_t> seen(n_, 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int j = stack.back();
    stack.pop_back();
    for (int i = 0; i < n_; ++i) {
      if (!seen[i] && a(i, j)) {
        seen[i] = 1;
        ++count;
        stack.push_back(i);
      }
    }
  }
  return count == n_;
}

int InteractionGraph::spanning_root() const {
  for (int r = 0; r < n_; ++r) {
    if (reaches_all(r)) return r;
  }
  return -1;
}

InteractionGraph knn_graph(std::span<const double> positions, int dim, int m) {
  validate_positions(positions, dim, m);
  const int n = static_cast<int>(positions.size()) / dim;
  const std::vector<double> dist = distance_matrix(positions, dim, n);

  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    const double* di = dist.data() + static_cast<std::size_t>(i) * n;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (di[a] != di[b]) return di[a] < di[b];
      return a < b;  // deterministic tie-break by agent index
    });
    for (int r = 0; r < m; ++r) {
      adj[static_cast<std::size_t>(i) * n + order[r]] = 1;
    }
  }
  return InteractionGraph::from_adjacency(n, m, GraphKind::Nominal, std::move(adj));
}

InteractionGraph perturbed_core_graph(std::span<const double> positions, int dim,
                                      int m, double rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("rho must be non-negative");
  validate_positions(positions, dim, m);
  const int n = static_cast<int>(positions.size()) / dim;
  const std::vector<double> dist = distance_matrix(positions, dim, n);
  const InteractionGraph nominal = knn_graph(positions, dim, m);

  const double slack = 2.0 * rho;
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    const double* di = dist.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      if (j == i || !nominal.a(i, j)) continue;  // only nominal edges can survive
      int count = 0;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        // d_ij > d_ik - 2 rho, evaluated in difference form so retention at
        // the exact robustness threshold is bit-reproducible
        if (di[j] - di[k] > -slack) ++count;
      }
      if (count < m) adj[static_cast<std::size_t>(i) * n + j] = 1;
    }
  }
  return InteractionGraph::from_adjacency(n, m, GraphKind::PerturbedCore, std::move(adj));
}

bool is_subgraph(const InteractionGraph& h, const InteractionGraph& g) {
  if (h.node_count() != g.node_count()) {
    throw std::invalid_argument("is_subgraph: node-count mismatch");
  }
  const int n = h.node_count();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (h.a(i, j) && !g.a(i, j)) return false;
    }
  }
  return true;
}

}  // namespace flock
