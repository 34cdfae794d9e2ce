#include "flock/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace flock {

namespace {

constexpr double kUnreachable = -std::numeric_limits<double>::infinity();

double pair_distance(std::span<const double> positions, int dim, int i, int j) {
  double acc = 0.0;
  const double* a = positions.data() + static_cast<std::size_t>(i) * dim;
  const double* b = positions.data() + static_cast<std::size_t>(j) * dim;
  for (int c = 0; c < dim; ++c) {
    const double d = a[c] - b[c];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

std::vector<double> edge_robustness_matrix(std::span<const double> positions,
                                           int dim, int m) {
  const InteractionGraph g = knn_graph(positions, dim, m);
  const int n = g.node_count();
  if (n < m + 2) {
    throw std::invalid_argument("edge robustness needs n >= m + 2 so the (m+1)-th "
                                "closest agent exists, got n = " + std::to_string(n));
  }
  std::vector<double> s(static_cast<std::size_t>(n) * n,
                        std::numeric_limits<double>::quiet_NaN());
  std::vector<int> order;
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = pair_distance(positions, dim, i, a);
      const double db = pair_distance(positions, dim, i, b);
      if (da != db) return da < db;
      return a < b;
    });
    // order[m] is the (m+1)-th closest other: the nearest agent with no
    // influence on i
    const double dp = pair_distance(positions, dim, i, order[m]);
    for (int r = 0; r < m; ++r) {
      const int j = order[r];
      s[static_cast<std::size_t>(i) * n + j] =
          0.5 * (dp - pair_distance(positions, dim, i, j));
    }
  }
  return s;
}

double edge_robustness(std::span<const double> positions, int dim, int m,
                       int j, int i) {
  const std::vector<double> s = edge_robustness_matrix(positions, dim, m);
  const int n = static_cast<int>(positions.size()) / dim;
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw std::invalid_argument("edge_robustness: agent index out of range");
  }
  const double value = s[static_cast<std::size_t>(i) * n + j];
  if (std::isnan(value)) {
    throw std::invalid_argument("edge (" + std::to_string(j) + " -> " + std::to_string(i) +
                                ") is not part of the nominal interaction graph");
  }
  return value;
}

RootRobustness root_robustness(std::span<const double> positions, int dim, int m,
                               int root) {
  const InteractionGraph g = knn_graph(positions, dim, m);
  const std::vector<double> s = edge_robustness_matrix(positions, dim, m);
  const int n = g.node_count();
  if (root < 0 || root >= n) throw std::invalid_argument("root index out of range");

  RootRobustness result;
  result.bottleneck.assign(n, kUnreachable);
  result.parent.assign(n, -1);
  result.bottleneck[root] = std::numeric_limits<double>::infinity();

  // Widest-path search: grow from the best current bottleneck so every
  // settled node carries its max-min path value.
  using Item = std::pair<double, int>;
  std::priority_queue<Item> queue;
  queue.emplace(result.bottleneck[root], root);
  std::vector<std::uint8_t> settled(n, 0);
  while (!queue.empty()) {
    const auto [value, j] = queue.top();
    queue.pop();
    if (settled[j] || value < result.bottleneck[j]) continue;
    settled[j] = 1;
    for (int i = 0; i < n; ++i) {
      if (settled[i] || !g.a(i, j)) continue;
      const double through = std::min(value, s[static_cast<std::size_t>(i) * n + j]);
      if (through > result.bottleneck[i]) {
        result.bottleneck[i] = through;
        result.parent[i] = j;
        queue.emplace(through, i);
      }
    }
  }

  result.rho_r = std::numeric_limits<double>::infinity();
  result.all_reachable = true;
  for (int i = 0; i < n; ++i) {
    if (i == root) continue;
    if (result.bottleneck[i] == kUnreachable) {
      result.all_reachable = false;
      result.rho_r = kUnreachable;
      break;
    }
    result.rho_r = std::min(result.rho_r, result.bottleneck[i]);
  }
  return result;
}

RobustnessReport graph_robustness(std::span<const double> positions, int dim, int m) {
  const int n = static_cast<int>(positions.size()) / dim;
  RobustnessReport report;
  report.edge_s = edge_robustness_matrix(positions, dim, m);
  report.root_rho.assign(n, kUnreachable);

  double best = kUnreachable;
  for (int r = 0; r < n; ++r) {
    const RootRobustness rr = root_robustness(positions, dim, m, r);
    report.root_rho[r] = rr.rho_r;
    if (rr.all_reachable && rr.rho_r > best) best = rr.rho_r;
  }
  if (best == kUnreachable) {
    report.has_spanning_tree = false;
    return report;  // initial graph has no spanning tree
  }
  report.has_spanning_tree = true;
  report.graph_rho = best;
  for (int r = 0; r < n; ++r) {
    if (report.root_rho[r] == best) report.co_optimal_roots.push_back(r);
  }
  report.best_root = report.co_optimal_roots.front();
  report.core = perturbed_core_graph(positions, dim, m, report.graph_rho);
  return report;
}

}  // namespace flock
