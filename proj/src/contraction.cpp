#include "flock/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "flock/robustness.hpp"

namespace flock {

namespace {

/* Log-form stationarity residual: g(T) = rhs(T) - T where rhs is the sum of
 * per-layer dwell-time expressions. Positive on (0, T*), negative beyond;
 * the unique positive root is the schedule period. */
double period_residual(double t, int m, std::span<const int> alphas) {
  double rhs = std::log1p((m + 1) * t) / (m + 1);
  for (int alpha : alphas) {
    rhs += std::log((m * t + 1.0) / ((m - alpha) * t + 1.0)) / alpha;
  }
  return rhs - t;
}

}  // namespace

double layer_gain(int k, double tau, int m, int alpha) {
  if (tau < 0.0) throw std::invalid_argument("layer_gain: negative dwell time");
  if (m < 1) throw std::invalid_argument("layer_gain: m must be positive");
  if (k == 0) {
    return -std::expm1(-(m + 1) * tau) / (m + 1);
  }
  if (alpha < 1 || alpha > m) {
    throw std::invalid_argument("layer_gain: flow must lie in [1, m]");
  }
  return std::exp(-(m - alpha) * tau) * -std::expm1(-alpha * tau);
}

ContractionSchedule solve_schedule(int m, std::span<const int> alphas) {
  if (m < 1) throw std::invalid_argument("solve_schedule: m must be positive");
  for (int alpha : alphas) {
    if (alpha < 1 || alpha > m) {
      throw std::invalid_argument("solve_schedule: flow " + std::to_string(alpha) +
                                  " outside [1, " + std::to_string(m) + "]");
    }
  }
  const int depth = static_cast<int>(alphas.size()) + 1;

  ContractionSchedule schedule;
  if (depth == 1) {
    // A depth-1 hierarchy has no stationary dwell time: the gain/period
    // ratio increases monotonically toward 1 as the dwell shrinks. Use a
    // fixed half-saturation dwell so the schedule stays usable.
    schedule.depth1_convention = true;
    const double tau = std::log(2.0) / (m + 1);
    schedule.dwell_times = {tau};
    schedule.period = tau;
    schedule.gain = layer_gain(0, tau, m, 0);
    schedule.ratio = schedule.gain / schedule.period;
    return schedule;
  }

  double hi = 1.0;
  int doublings = 0;
  while (period_residual(hi, m, alphas) > 0.0) {
    hi *= 2.0;
    if (++doublings > 200) {
      throw std::runtime_error("solve_schedule: failed to bracket the period (m = " +
                               std::to_string(m) + ", D = " + std::to_string(depth) + ")");
    }
  }
  // The residual is positive on (0, root) and concave, so bisect with the
  // lower end anchored at 0 without evaluating there.
  double lo = 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (period_residual(mid, m, alphas) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double period = 0.5 * (lo + hi);

  schedule.dwell_times.resize(depth);
  schedule.dwell_times[0] = std::log1p((m + 1) * period) / (m + 1);
  for (int k = 1; k < depth; ++k) {
    const int alpha = alphas[k - 1];
    schedule.dwell_times[k] =
        std::log((m * period + 1.0) / ((m - alpha) * period + 1.0)) / alpha;
  }
  schedule.period = period;
  schedule.gain = layer_gain(0, schedule.dwell_times[0], m, 0);
  for (int k = 1; k < depth; ++k) {
    schedule.gain *= layer_gain(k, schedule.dwell_times[k], m, alphas[k - 1]);
  }
  schedule.ratio = schedule.gain / schedule.period;
  return schedule;
}

BoundResult optimize_bound(std::span<const double> positions, int dim, int m) {
  const RobustnessReport report = graph_robustness(positions, dim, m);
  BoundResult result;
  if (!report.has_spanning_tree) {
    return result;  // uncertifiable: nothing to sweep
  }
  result.certifiable = true;

  const int n = static_cast<int>(positions.size()) / dim;
  std::vector<double> candidates;
  for (double s : report.edge_s) {
    if (!std::isnan(s)) candidates.push_back(s);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  bool have_best = false;
  for (double rho : candidates) {
    const InteractionGraph core = perturbed_core_graph(positions, dim, m, rho);
    if (core.spanning_root() < 0) continue;  // core lost its spanning tree
    for (int root = 0; root < n; ++root) {
      HierarchyResult hr = build_hierarchy(core, root);
      if (!hr.ok) continue;
      CandidateRow row;
      row.rho = rho;
      row.root = root;
      row.depth = hr.hierarchy.depth;
      row.flows = hr.hierarchy.flows;
      const bool zero_flow =
          std::any_of(row.flows.begin(), row.flows.end(), [](int a) { return a < 1; });
      if (zero_flow) {
        row.degenerate_zero_flow = true;
        row.bound = 0.0;
      } else {
        row.schedule = solve_schedule(m, row.flows);
        row.bound = row.schedule.ratio * rho;
      }
      const bool better =
          !have_best || row.bound > result.bound ||
          (row.bound == result.bound &&
           (row.rho > result.best_rho ||
            (row.rho == result.best_rho && row.root < result.best_root)));
      if (better) {
        have_best = true;
        result.best_rho = row.rho;
        result.best_root = row.root;
        result.schedule = row.schedule;
        result.hierarchy = hr.hierarchy;
        result.bound = row.bound;
      }
      result.table.push_back(std::move(row));
    }
  }
  return result;
}

}  // namespace flock
