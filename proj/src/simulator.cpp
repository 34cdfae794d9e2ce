#include "flock/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flock/io.hpp"

namespace flock {

namespace {

bool all_finite(const std::vector<double>& values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

/* One classical RK4 step with the interaction graph frozen. */
void rk4_step(std::vector<double>& x, std::vector<double>& v, int dim,
              const InteractionGraph& graph, double dt,
              std::vector<std::vector<double>>& scratch) {
  const std::size_t len = x.size();
  auto& k1x = scratch[0]; auto& k1v = scratch[1];
  auto& k2x = scratch[2]; auto& k2v = scratch[3];
  auto& k3x = scratch[4]; auto& k3v = scratch[5];
  auto& k4x = scratch[6]; auto& k4v = scratch[7];
  auto& tx = scratch[8]; auto& tv = scratch[9];

  dynamics_rhs(x, v, dim, graph, k1x, k1v);
  for (std::size_t c = 0; c < len; ++c) {
    tx[c] = x[c] + 0.5 * dt * k1x[c];
    tv[c] = v[c] + 0.5 * dt * k1v[c];
  }
  dynamics_rhs(tx, tv, dim, graph, k2x, k2v);
  for (std::size_t c = 0; c < len; ++c) {
    tx[c] = x[c] + 0.5 * dt * k2x[c];
    tv[c] = v[c] + 0.5 * dt * k2v[c];
  }
  dynamics_rhs(tx, tv, dim, graph, k3x, k3v);
  for (std::size_t c = 0; c < len; ++c) {
    tx[c] = x[c] + dt * k3x[c];
    tv[c] = v[c] + dt * k3v[c];
  }
  dynamics_rhs(tx, tv, dim, graph, k4x, k4v);
  for (std::size_t c = 0; c < len; ++c) {
    x[c] += dt / 6.0 * (k1x[c] + 2.0 * k2x[c] + 2.0 * k3x[c] + k4x[c]);
    v[c] += dt / 6.0 * (k1v[c] + 2.0 * k2v[c] + 2.0 * k3v[c] + k4v[c]);
  }
}

double max_relative_displacement(const std::vector<double>& x,
                                 const std::vector<double>& x0, int dim, int n) {
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (int c = 0; c < dim; ++c) {
        const double now = x[static_cast<std::size_t>(j) * dim + c] -
                           x[static_cast<std::size_t>(i) * dim + c];
        const double then = x0[static_cast<std::size_t>(j) * dim + c] -
                            x0[static_cast<std::size_t>(i) * dim + c];
        const double d = now - then;
        acc += d * d;
      }
      best = std::max(best, std::sqrt(acc));
    }
  }
  return best;
}

SimulationReference default_reference(const Configuration& config) {
  SimulationReference ref;
  ref.h = knn_graph(config.positions, config.dimension, config.neighbor_count);
  const int root = ref.h.spanning_root();
  if (root >= 0) {
    HierarchyResult hr = build_hierarchy(ref.h, root);
    if (hr.ok) {
      ref.hierarchy = hr.hierarchy;
      ref.hierarchy_valid = true;
    }
  }
  return ref;
}

StepDiagnostics make_diagnostics(const State& state, int dim,
                                 const InteractionGraph& graph,
                                 const InteractionGraph* previous,
                                 const std::vector<double>& x0,
                                 const SimulationReference& ref) {
  StepDiagnostics diag;
  const int n = graph.node_count();
  diag.delta_n = velocity_diameter(state.velocities, dim);
  diag.edges_changed = previous ? graph.edge_difference(*previous) : 0;
  diag.h_rho_contained = is_subgraph(ref.h, graph);
  diag.hypothesis1 =
      ref.hierarchy_valid && check_hierarchy_hypothesis(graph, ref.hierarchy).satisfied;
  diag.displacement_max = max_relative_displacement(state.positions, x0, dim, n);
  return diag;
}

}  // namespace

Trajectory simulate(const Configuration& config, double dt, double t_end,
                    const SimulationReference* reference) {
  if (!(dt > 0.0)) throw std::invalid_argument("simulate: dt must be positive");
  if (!(t_end >= dt)) throw std::invalid_argument("simulate: t_end must be at least dt");

  Trajectory traj;
  traj.config_digest = io::config_digest(config);
  traj.dimension = config.dimension;
  traj.agent_count = config.agent_count();
  traj.neighbor_count = config.neighbor_count;
  traj.dt = dt;
  traj.reference = reference ? *reference : default_reference(config);

  const int dim = config.dimension;
  std::vector<double> x = config.positions;
  std::vector<double> v = config.velocities;
  std::vector<std::vector<double>> scratch(10, std::vector<double>(x.size()));

  long long steps = std::llround(t_end / dt);
  if (steps < 1 || std::abs(steps * dt - t_end) > 1e-9 * dt) {
    steps = static_cast<long long>(std::ceil(t_end / dt));
  }

  traj.states.push_back(State{0.0, x, v});
  traj.times.push_back(0.0);
  traj.graphs.push_back(knn_graph(x, dim, config.neighbor_count));
  traj.diagnostics.push_back(
      make_diagnostics(traj.states.back(), dim, traj.graphs.back(), nullptr,
                       config.positions, traj.reference));
  traj.delta_n0 = traj.diagnostics.front().delta_n;

  for (long long k = 1; k <= steps; ++k) {
    const double target = std::min(static_cast<double>(k) * dt, t_end);
    const double h = target - traj.times.back();
    if (h <= 0.0) break;
    // switched dynamics: graph from the step start, frozen across stages
    rk4_step(x, v, dim, traj.graphs.back(), h, scratch);
    if (!all_finite(x) || !all_finite(v)) {
      traj.aborted_nonfinite = true;
      traj.abort_time = target;
      break;
    }
    traj.states.push_back(State{target, x, v});
    traj.times.push_back(target);
    traj.graphs.push_back(knn_graph(x, dim, config.neighbor_count));
    traj.diagnostics.push_back(
        make_diagnostics(traj.states.back(), dim, traj.graphs.back(),
                         &traj.graphs[traj.graphs.size() - 2], config.positions,
                         traj.reference));
  }
  return traj;
}

MonitorReport monitor_report(const Trajectory& trajectory, const Certificate& certificate) {
  if (trajectory.config_digest != certificate.config_digest) {
    throw std::invalid_argument("monitor_report: trajectory and certificate come "
                                "from different configurations");
  }
  if (trajectory.states.empty()) {
    throw std::invalid_argument("monitor_report: empty trajectory");
  }

  MonitorReport report;
  const int dim = trajectory.dimension;
  const std::size_t samples = trajectory.states.size();
  const double delta0 = trajectory.delta_n0;
  report.epsilon_int = 10.0 * trajectory.dt * delta0;

  const InteractionGraph h_rho =
      perturbed_core_graph(trajectory.states.front().positions, dim,
                           trajectory.neighbor_count, certificate.rho);

  bool contained_so_far = true;
  const bool check_hypothesis = certificate.hierarchy.root >= 0;
  for (std::size_t idx = 0; idx < samples; ++idx) {
    const InteractionGraph& g = trajectory.graphs[idx];
    const double t = trajectory.times[idx];
    if (contained_so_far) {
      if (is_subgraph(h_rho, g)) {
        report.tree_preserved_until = t;
      } else {
        contained_so_far = false;
      }
    }
    if (check_hypothesis && !report.hypothesis_violated_at &&
        !check_hierarchy_hypothesis(g, certificate.hierarchy).satisfied) {
      report.hypothesis_violated_at = t;
    }
    if (!report.disconnection_time && g.spanning_root() < 0) {
      report.disconnection_time = t;
    }
    report.displacement_max =
        std::max(report.displacement_max, trajectory.diagnostics[idx].displacement_max);
  }
  report.tree_preserved_throughout = contained_so_far;
  report.displacement_within_rho = report.displacement_max < certificate.rho;

  // Contraction envelope at period multiples, at the first sample at or
  // after q*T, while the hierarchy flow bounds have held up to there.
  const double period = certificate.schedule.period;
  if (check_hypothesis && period > 0.0 && !certificate.schedule.dwell_times.empty()) {
    const double t_last = trajectory.times.back();
    std::size_t cursor = 0;
    for (int q = 0;; ++q) {
      const double target = static_cast<double>(q) * period;
      if (target > t_last) break;
      while (cursor < samples && trajectory.times[cursor] < target) ++cursor;
      if (cursor >= samples) break;
      const double t_sample = trajectory.times[cursor];
      if (report.hypothesis_violated_at && *report.hypothesis_violated_at <= t_sample) break;
      const double bound =
          std::pow(1.0 - certificate.schedule.gain, q) * delta0 + report.epsilon_int;
      const double delta = trajectory.diagnostics[cursor].delta_n;
      ++report.envelope_checks;
      if (delta > bound) {
        report.envelope_violations.push_back(EnvelopeViolation{q, delta, bound});
      }
    }
  }

  report.delta_n_end = trajectory.diagnostics.back().delta_n;
  report.alignment_reached =
      report.delta_n_end < 1e-3 * delta0 || report.delta_n_end == 0.0;

  report.terminal_mean_velocity.assign(dim, 0.0);
  const std::vector<double>& v_end = trajectory.states.back().velocities;
  const int n = trajectory.agent_count;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < dim; ++c) {
      report.terminal_mean_velocity[c] += v_end[static_cast<std::size_t>(i) * dim + c];
    }
  }
  for (double& c : report.terminal_mean_velocity) c /= n;
  return report;
}

ProbeResult diameter_inequality_probe(const State& state, int dim,
                                      const InteractionGraph& graph,
                                      const Hierarchy& hierarchy,
                                      double dt, double tolerance) {
  ProbeResult result;
  const HypothesisCheck hyp = check_hierarchy_hypothesis(graph, hierarchy);
  if (!hyp.satisfied) {
    result.skip_reason = "hierarchy flow bounds do not hold: " + hyp.what;
    return result;
  }
  if (!(dt > 0.0)) throw std::invalid_argument("probe: dt must be positive");
  result.applicable = true;

  const int m = graph.neighbor_count();
  const double delta_n0 = velocity_diameter(state.velocities, dim);

  std::vector<double> x = state.positions;
  std::vector<double> v = state.velocities;
  std::vector<std::vector<double>> scratch(10, std::vector<double>(x.size()));
  rk4_step(x, v, dim, graph, dt, scratch);

  for (int k = 0; k < hierarchy.depth; ++k) {
    const std::vector<int>& inner = hierarchy.nested[k];
    const std::vector<int>& outer = hierarchy.nested[k + 1];
    const double before = velocity_diameter(state.velocities, dim, outer);
    const double after = velocity_diameter(v, dim, outer);
    const double lhs = (after - before) / dt;
    double rhs;
    if (k == 0) {
      rhs = -before + m * (delta_n0 - before);
    } else {
      const int alpha = hierarchy.flows[k - 1];
      const double inner_delta = velocity_diameter(state.velocities, dim, inner);
      rhs = alpha * (inner_delta - before) + (m - alpha) * (delta_n0 - before);
    }
    result.checks.push_back(LayerProbeCheck{k, lhs, rhs + tolerance, lhs <= rhs + tolerance});
  }
  return result;
}

}  // namespace flock
