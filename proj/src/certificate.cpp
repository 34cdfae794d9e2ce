#include "flock/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "flock/io.hpp"
#include "flock/robustness.hpp"
#include "flock/topology.hpp"

namespace flock {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/* Best root for a fixed rho, by gain/period ratio on the core subgraph;
 * ties prefer the lower index. Returns -1 when no root reaches all nodes. */
int best_root_at(const InteractionGraph& core, int m, double* ratio_out) {
  int best = -1;
  double best_ratio = -1.0;
  for (int r = 0; r < core.node_count(); ++r) {
    HierarchyResult hr = build_hierarchy(core, r);
    if (!hr.ok) continue;
    const bool zero_flow = std::any_of(hr.hierarchy.flows.begin(), hr.hierarchy.flows.end(),
                                       [](int a) { return a < 1; });
    const double ratio = zero_flow ? 0.0 : solve_schedule(m, hr.hierarchy.flows).ratio;
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = r;
    }
  }
  if (best >= 0 && ratio_out) *ratio_out = best_ratio;
  return best;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::NotCertified: return "not-certified";
    case Verdict::Uncertifiable: return "uncertifiable";
  }
  return "unknown";
}

Certificate certify(const Configuration& config, const CertifyOverrides& overrides) {
  Certificate cert;
  cert.config_digest = io::config_digest(config);
  cert.delta_n0 = velocity_diameter(config.velocities, config.dimension);

  const int m = config.neighbor_count;
  const int n = config.agent_count();
  const RobustnessReport report = graph_robustness(config.positions, config.dimension, m);
  cert.graph_rho = report.has_spanning_tree ? report.graph_rho : 0.0;

  if (overrides.root && (*overrides.root < 0 || *overrides.root >= n)) {
    throw std::invalid_argument("certify: root index out of range");
  }
  if (overrides.rho && !(*overrides.rho >= 0.0)) {
    throw std::invalid_argument("certify: rho must be non-negative");
  }

  if (!report.has_spanning_tree) {
    cert.verdict = Verdict::Uncertifiable;
    cert.warnings.push_back("initial interaction graph has no spanning tree");
    return cert;
  }

  bool have_structure = false;
  if (!overrides.rho && !overrides.root) {
    BoundResult sweep = optimize_bound(config.positions, config.dimension, m);
    cert.rho = sweep.best_rho;
    cert.root = sweep.best_root;
    cert.hierarchy = sweep.hierarchy;
    cert.schedule = sweep.schedule;
    cert.table = std::move(sweep.table);
    have_structure = !cert.schedule.dwell_times.empty();
    if (!have_structure) {
      // every candidate degenerated to zero flow; threshold collapses to 0
      cert.warnings.push_back("all sweep candidates have zero-flow layers; threshold is 0");
    }
  } else {
    // Resolve the overridden pair.
    double rho = 0.0;
    int root = -1;
    if (overrides.rho) {
      rho = *overrides.rho;
      const InteractionGraph core =
          perturbed_core_graph(config.positions, config.dimension, m, rho);
      root = overrides.root ? *overrides.root : best_root_at(core, m, nullptr);
      if (root < 0) {
        // no root reaches all nodes in the core; fall back below
        root = report.best_root;
      }
    } else {
      root = *overrides.root;
      // Keep the overridden root and pick the best rho candidate for it.
      BoundResult sweep = optimize_bound(config.positions, config.dimension, m);
      double best_bound = -1.0;
      for (const CandidateRow& row : sweep.table) {
        if (row.root != root) continue;
        if (row.bound > best_bound ||
            (row.bound == best_bound && row.rho > rho)) {
          best_bound = row.bound;
          rho = row.rho;
        }
      }
      cert.table = std::move(sweep.table);
      if (best_bound < 0.0) {
        cert.verdict = Verdict::Uncertifiable;
        cert.warnings.push_back("root " + std::to_string(root + 1) +
                                " reaches no spanning tree in any core subgraph");
        return cert;
      }
    }
    cert.rho = rho;
    cert.root = root;

    const InteractionGraph core =
        perturbed_core_graph(config.positions, config.dimension, m, rho);
    HierarchyResult hr = build_hierarchy(core, root);
    if (!hr.ok) {
      // The requested disturbance exceeds what this root can support in the
      // core subgraph. Build the hierarchy on the nominal graph instead so
      // the requested pair can still be evaluated, and say so: the
      // preservation guarantee does not cover this certificate.
      const InteractionGraph nominal = knn_graph(config.positions, config.dimension, m);
      HierarchyResult nominal_hr = build_hierarchy(nominal, root);
      if (!nominal_hr.ok) {
        cert.verdict = Verdict::Uncertifiable;
        cert.warnings.push_back("root " + std::to_string(root + 1) +
                                " does not reach every agent in the initial graph");
        return cert;
      }
      cert.hierarchy = nominal_hr.hierarchy;
      cert.hierarchy_on_nominal = true;
      cert.warnings.push_back(
          "core subgraph at rho = " + format_value(rho) +
          " has no spanning tree from root " + std::to_string(root + 1) +
          "; hierarchy taken from the unperturbed graph, so the preservation "
          "guarantee does not apply");
    } else {
      cert.hierarchy = hr.hierarchy;
    }

    if (overrides.rho && rho > report.graph_rho) {
      cert.warnings.push_back("requested rho = " + format_value(rho) +
                              " exceeds the computed graph robustness " +
                              format_value(report.graph_rho));
    }

    const bool zero_flow = std::any_of(cert.hierarchy.flows.begin(), cert.hierarchy.flows.end(),
                                       [](int a) { return a < 1; });
    if (zero_flow) {
      cert.warnings.push_back("hierarchy has a zero-flow layer; threshold is 0");
    } else {
      cert.schedule = solve_schedule(m, cert.hierarchy.flows);
      have_structure = true;
    }
  }

  if (have_structure && cert.schedule.depth1_convention) {
    cert.warnings.push_back(
        "depth-1 hierarchy: contraction ratio uses a fixed dwell time "
        "(no stationary optimum exists)");
  }

  cert.threshold = have_structure ? cert.schedule.ratio * cert.rho : 0.0;
  cert.margin = cert.threshold - cert.delta_n0;
  cert.verdict =
      cert.delta_n0 <= cert.threshold ? Verdict::Certified : Verdict::NotCertified;
  if (cert.rho > cert.delta_n0) {
    cert.warnings.push_back("rho = " + format_value(cert.rho) +
                            " exceeds the initial velocity diameter " +
                            format_value(cert.delta_n0) +
                            "; the disturbance bound is looser than the certified regime");
  }
  return cert;
}

}  // namespace flock
