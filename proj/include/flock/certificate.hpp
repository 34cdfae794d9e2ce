#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flock/contraction.hpp"
#include "flock/model.hpp"

namespace flock {

enum class Verdict {
  Certified,      // initial velocity diameter within the guaranteed threshold
  NotCertified,   // diameter too large; no prediction is made
  Uncertifiable,  // no usable spanning tree, so no threshold exists
};

const char* to_string(Verdict v);

/* A priori flocking certificate. Embeds every number needed to re-derive
 * the verdict offline: threshold = ratio * rho exactly as recorded, and
 * the schedule parameters drive the simulator's contraction-envelope
 * monitor. */
struct Certificate {
  std::string config_digest;
  double rho = 0.0;
  int root = -1;
  Hierarchy hierarchy;
  bool hierarchy_on_nominal = false;  // fallback: built on the nominal graph, not on H_rho
  ContractionSchedule schedule;
  double threshold = 0.0;             // (c/T) * rho
  double delta_n0 = 0.0;              // measured initial velocity diameter
  double margin = 0.0;                // threshold - delta_n0
  Verdict verdict = Verdict::Uncertifiable;
  double graph_rho = 0.0;             // computed robustness of the nominal graph
  std::vector<std::string> warnings;
  std::vector<CandidateRow> table;    // full sweep table (empty under overrides)
};

struct CertifyOverrides {
  std::optional<double> rho;
  std::optional<int> root;   // 0-based
};

/* Evaluates the sufficient flocking condition delta_N(0) <= (c/T) * rho.
 * Without overrides the (rho, root) pair comes from optimize_bound. With a
 * rho override exceeding what the chosen root can support in the core
 * subgraph, the hierarchy falls back to the nominal graph and a warning is
 * recorded; the preservation guarantee does not cover that case. The
 * comparison is inclusive; equality at the boundary certifies. */
Certificate certify(const Configuration& config, const CertifyOverrides& overrides = {});

}  // namespace flock
