#pragma once

#include <span>
#include <vector>

#include "flock/hierarchy.hpp"

namespace flock {

/* Guaranteed contraction gain of layer k over a dwell time tau:
 *   k = 0:  (1 - e^{-(m+1) tau}) / (m+1)
 *   k >= 1: e^{-(m-alpha) tau} (1 - e^{-alpha tau})
 * Both vanish at tau = 0 and stay in [0, 1). Throws on negative tau or,
 * for k >= 1, alpha outside [1, m]. */
double layer_gain(int k, double tau, int m, int alpha);

/* Optimal dwell-time schedule for a depth-D hierarchy: the per-layer dwell
 * times maximizing (product of layer gains) / (total time). */
struct ContractionSchedule {
  std::vector<double> dwell_times;  // tau_0..tau_{D-1}
  double period = 0.0;              // T = sum of dwell times
  double gain = 0.0;                // c = product of layer gains, in (0,1)
  double ratio = 0.0;               // c / T
  bool depth1_convention = false;   // see solve_schedule
};

/* Solves for the schedule given m and the layer flows alpha_1..alpha_{D-1}
 * (D = alphas.size() + 1). The period is the unique positive root of
 *   T = ln((m+1)T+1)/(m+1) + sum_k ln((mT+1)/((m-alpha_k)T+1))/alpha_k,
 * found by bisection to 1e-12 absolute, and the dwell times follow in
 * closed form. For D = 1 the ratio has no interior maximum (it increases
 * without bound as tau -> 0 toward the unattained supremum 1), so a fixed
 * dwell tau_0 = ln(2)/(m+1) is used and flagged via depth1_convention. */
ContractionSchedule solve_schedule(int m, std::span<const int> alphas);

/* One (rho, root) candidate evaluated during the bound sweep. */
struct CandidateRow {
  double rho = 0.0;
  int root = -1;
  int depth = 0;
  std::vector<int> flows;
  ContractionSchedule schedule;     // empty when degenerate_zero_flow
  double bound = 0.0;               // ratio * rho
  bool degenerate_zero_flow = false;
};

struct BoundResult {
  bool certifiable = false;         // nominal graph has a spanning tree
  double best_rho = 0.0;
  int best_root = -1;
  ContractionSchedule schedule;
  Hierarchy hierarchy;
  double bound = 0.0;
  std::vector<CandidateRow> table;
};

/* Sweeps the finite candidate set of disturbance bounds (the distinct edge
 * robustness values whose core subgraph keeps a spanning tree) and all
 * roots, maximizing (c/T) * rho. Ties prefer larger rho, then lower root
 * index. */
BoundResult optimize_bound(std::span<const double> positions, int dim, int m);

}  // namespace flock
