#pragma once

#include <iosfwd>
#include <string>

#include "flock/certificate.hpp"
#include "flock/model.hpp"
#include "flock/robustness.hpp"
#include "flock/simulator.hpp"

namespace flock::io {

/* FNV-1a digest of the canonical configuration rendering; certificates and
 * trajectories carry it so provenance mismatches are detectable. */
std::string config_digest(const Configuration& config);

/* Parses a configuration document (JSON, schema 1):
 *   {"schema": 1, "dimension": d, "m": m,
 *    "agents": [{"x": [..d..], "v": [..d..]}, ...],
 *    "scenario": {"velocity_scale": a, "drift": [..d..]}}   (optional)
 * The optional scenario rescales every velocity to a*v + drift. Errors
 * name the offending field. */
Configuration parse_config(const std::string& text);

/* Canonical document for a configuration (velocities post-scenario). */
std::string serialize_configuration(const Configuration& config);

std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

std::string serialize_robustness_report(const RobustnessReport& report, int agent_count);

std::string serialize_sweep_table(const BoundResult& result);

/* Delimited trajectory samples: t, agent (1-based), x_1..x_d, v_1..v_d.
 * Values are rendered with 17 significant digits so they reparse exactly. */
void write_trajectory(std::ostream& out, const Trajectory& trajectory);

/* Delimited per-sample diagnostics: t, delta_N, tree_preserved,
 * hypothesis1, displacement_max. */
void write_diagnostics(std::ostream& out, const Trajectory& trajectory);

std::string serialize_monitor_report(const MonitorReport& report);

}  // namespace flock::io
