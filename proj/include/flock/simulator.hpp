#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flock/certificate.hpp"
#include "flock/hierarchy.hpp"
#include "flock/model.hpp"
#include "flock/topology.hpp"

namespace flock {

struct StepDiagnostics {
  double delta_n = 0.0;           // velocity diameter over all agents
  int edges_changed = 0;          // adjacency entries differing from the previous sample
  bool h_rho_contained = true;    // reference core subgraph still inside G(t)
  bool hypothesis1 = true;        // reference hierarchy flow bounds hold in G(t)
  double displacement_max = 0.0;  // max_{i,j} ||(x_j - x_i)(t) - (x_j - x_i)(0)||
};

/* Reference structure the per-step diagnostics are checked against. By
 * default the nominal graph at t = 0 and the hierarchy from its lowest
 * full-reachability root. */
struct SimulationReference {
  InteractionGraph h;
  Hierarchy hierarchy;
  bool hierarchy_valid = false;
};

struct Trajectory {
  std::string config_digest;
  int dimension = 0;
  int agent_count = 0;
  int neighbor_count = 0;
  double dt = 0.0;
  double delta_n0 = 0.0;
  std::vector<double> times;              // strictly increasing, sample 0 at t = 0
  std::vector<State> states;
  std::vector<InteractionGraph> graphs;   // G(t) per sample
  std::vector<StepDiagnostics> diagnostics;
  SimulationReference reference;
  bool aborted_nonfinite = false;
  double abort_time = 0.0;
};

/* Fixed-step classical RK4 integration of the switched system. The
 * interaction graph is recomputed from positions at the start of every
 * step and held constant through the step's internal stages. A non-finite
 * state aborts the run, keeping the last valid sample. */
Trajectory simulate(const Configuration& config, double dt, double t_end,
                    const SimulationReference* reference = nullptr);

struct EnvelopeViolation {
  int q = 0;
  double delta = 0.0;
  double bound = 0.0;
};

struct MonitorReport {
  double tree_preserved_until = 0.0;  // last time H_rho containment held at all samples
  bool tree_preserved_throughout = false;
  std::optional<double> hypothesis_violated_at;
  std::vector<EnvelopeViolation> envelope_violations;
  int envelope_checks = 0;            // number of period multiples examined
  double displacement_max = 0.0;
  bool displacement_within_rho = false;
  bool alignment_reached = false;     // delta_N(t_end) < 1e-3 * delta_N(0)
  std::optional<double> disconnection_time;  // first sample where G(t) has no spanning tree
  double delta_n_end = 0.0;
  double epsilon_int = 0.0;           // 10 * dt * delta_N(0)
  // Empirical mean velocity at the horizon. Interactions are not symmetric,
  // so the mean is not conserved and no closed form is claimed for the
  // alignment limit; this is a diagnostic only.
  std::vector<double> terminal_mean_velocity;
};

/* Validates a trajectory against a certificate: core-subgraph containment,
 * hierarchy flow bounds, the per-period contraction envelope
 * delta_N(qT) <= (1-c)^q delta_N(0) + eps (checked only while the flow
 * bounds held on [0, qT], at the first sample at or after qT), and the
 * pairwise displacement bound. Throws when the certificate and trajectory
 * come from different configurations. */
MonitorReport monitor_report(const Trajectory& trajectory, const Certificate& certificate);

struct LayerProbeCheck {
  int k = 0;
  double lhs = 0.0;   // forward difference of the nested-set diameter
  double rhs = 0.0;   // guaranteed bound plus tolerance
  bool ok = true;
};

struct ProbeResult {
  bool applicable = false;
  std::string skip_reason;
  std::vector<LayerProbeCheck> checks;
};

/* Numerically verifies the per-layer diameter contraction inequalities at
 * one state: steps the dynamics once (graph frozen) and compares the
 * forward difference of each nested-set diameter against its closed-form
 * bound, with the group diameter frozen at the probe start. Skipped when
 * the hierarchy flow bounds do not hold for (graph, hierarchy). */
ProbeResult diameter_inequality_probe(const State& state, int dim,
                                      const InteractionGraph& graph,
                                      const Hierarchy& hierarchy,
                                      double dt, double tolerance);

}  // namespace flock
