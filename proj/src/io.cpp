#include "flock/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace flock::io {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

std::uint64_t fnv1a(std::uint64_t hash, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t k = 0; k < size; ++k) {
    hash ^= bytes[k];
    hash *= 1099511628211ULL;
  }
  return hash;
}

[[noreturn]] void fail_field(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config field \"" + field + "\": " + why);
}

int require_int(const json& doc, const std::string& field) {
  if (!doc.contains(field)) fail_field(field, "missing");
  const json& value = doc.at(field);
  if (!value.is_number_integer()) fail_field(field, "expected an integer");
  return value.get<int>();
}

std::vector<double> require_vector(const json& node, const std::string& field, int dim) {
  if (!node.is_array()) fail_field(field, "expected an array");
  if (static_cast<int>(node.size()) != dim) {
    fail_field(field, "expected " + std::to_string(dim) + " components, got " +
                          std::to_string(node.size()));
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (const json& v : node) {
    if (!v.is_number()) fail_field(field, "expected numeric components");
    out.push_back(v.get<double>());
  }
  return out;
}

json schedule_to_json(const ContractionSchedule& schedule) {
  return json{{"dwell_times", schedule.dwell_times},
              {"period", schedule.period},
              {"gain", schedule.gain},
              {"ratio", schedule.ratio},
              {"depth1_convention", schedule.depth1_convention}};
}

ContractionSchedule schedule_from_json(const json& doc) {
  ContractionSchedule schedule;
  schedule.dwell_times = doc.at("dwell_times").get<std::vector<double>>();
  schedule.period = doc.at("period").get<double>();
  schedule.gain = doc.at("gain").get<double>();
  schedule.ratio = doc.at("ratio").get<double>();
  schedule.depth1_convention = doc.value("depth1_convention", false);
  return schedule;
}

json layers_to_json(const std::vector<std::vector<int>>& layers) {
  json out = json::array();
  for (const auto& layer : layers) {
    json one = json::array();
    for (int i : layer) one.push_back(i + 1);  // agents are 1-based in documents
    out.push_back(std::move(one));
  }
  return out;
}

json hierarchy_to_json(const Hierarchy& hierarchy) {
  return json{{"root", hierarchy.root + 1},
              {"depth", hierarchy.depth},
              {"layers", layers_to_json(hierarchy.layers)},
              {"flows", hierarchy.flows}};
}

Hierarchy hierarchy_from_json(const json& doc) {
  Hierarchy hierarchy;
  hierarchy.root = doc.at("root").get<int>() - 1;
  hierarchy.depth = doc.at("depth").get<int>();
  hierarchy.flows = doc.at("flows").get<std::vector<int>>();
  int n = 0;
  for (const json& layer : doc.at("layers")) n += static_cast<int>(layer.size());
  hierarchy.layer_of.assign(n, -1);
  for (const json& layer : doc.at("layers")) {
    std::vector<int> nodes;
    for (const json& v : layer) nodes.push_back(v.get<int>() - 1);
    for (int i : nodes) {
      hierarchy.layer_of[i] = static_cast<int>(hierarchy.layers.size());
    }
    hierarchy.layers.push_back(std::move(nodes));
  }
  std::vector<int> acc;
  for (const auto& layer : hierarchy.layers) {
    acc.insert(acc.end(), layer.begin(), layer.end());
    std::sort(acc.begin(), acc.end());
    hierarchy.nested.push_back(acc);
  }
  return hierarchy;
}

json candidate_to_json(const CandidateRow& row) {
  json out{{"rho", row.rho},
           {"root", row.root + 1},
           {"depth", row.depth},
           {"flows", row.flows},
           {"bound", row.bound},
           {"degenerate_zero_flow", row.degenerate_zero_flow}};
  if (!row.degenerate_zero_flow) out["schedule"] = schedule_to_json(row.schedule);
  return out;
}

CandidateRow candidate_from_json(const json& doc) {
  CandidateRow row;
  row.rho = doc.at("rho").get<double>();
  row.root = doc.at("root").get<int>() - 1;
  row.depth = doc.at("depth").get<int>();
  row.flows = doc.at("flows").get<std::vector<int>>();
  row.bound = doc.at("bound").get<double>();
  row.degenerate_zero_flow = doc.value("degenerate_zero_flow", false);
  if (doc.contains("schedule")) row.schedule = schedule_from_json(doc.at("schedule"));
  return row;
}

void append_17g(std::string& out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out += buf;
}

}  // namespace

std::string config_digest(const Configuration& config) {
  std::uint64_t hash = 1469598103934665603ULL;
  const std::int64_t header[2] = {config.dimension, config.neighbor_count};
  hash = fnv1a(hash, header, sizeof(header));
  hash = fnv1a(hash, config.positions.data(), config.positions.size() * sizeof(double));
  hash = fnv1a(hash, config.velocities.data(), config.velocities.size() * sizeof(double));
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
  return buf;
}

Configuration parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("config parse error: ") + err.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config document must be an object");

  const int schema = require_int(doc, "schema");
  if (schema != kSchemaVersion) {
    fail_field("schema", "unsupported version " + std::to_string(schema));
  }
  const int dim = require_int(doc, "dimension");
  if (dim < 1) fail_field("dimension", "must be positive");
  const int m = require_int(doc, "m");
  if (m < 1) fail_field("m", "must be positive");
  if (!doc.contains("agents")) fail_field("agents", "missing");
  const json& agents = doc.at("agents");
  if (!agents.is_array() || agents.empty()) fail_field("agents", "expected a non-empty array");

  std::vector<double> positions;
  std::vector<double> velocities;
  int index = 0;
  for (const json& agent : agents) {
    const std::string where = "agents[" + std::to_string(index) + "]";
    if (!agent.is_object()) fail_field(where, "expected an object");
    if (!agent.contains("x")) fail_field(where + ".x", "missing");
    if (!agent.contains("v")) fail_field(where + ".v", "missing");
    const std::vector<double> x = require_vector(agent.at("x"), where + ".x", dim);
    const std::vector<double> v = require_vector(agent.at("v"), where + ".v", dim);
    positions.insert(positions.end(), x.begin(), x.end());
    velocities.insert(velocities.end(), v.begin(), v.end());
    ++index;
  }

  if (doc.contains("scenario")) {
    const json& scenario = doc.at("scenario");
    if (!scenario.is_object()) fail_field("scenario", "expected an object");
    double scale = 1.0;
    if (scenario.contains("velocity_scale")) {
      if (!scenario.at("velocity_scale").is_number()) {
        fail_field("scenario.velocity_scale", "expected a number");
      }
      scale = scenario.at("velocity_scale").get<double>();
    }
    std::vector<double> drift(dim, 0.0);
    if (scenario.contains("drift")) {
      drift = require_vector(scenario.at("drift"), "scenario.drift", dim);
    }
    const int n = static_cast<int>(velocities.size()) / dim;
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < dim; ++c) {
        double& v = velocities[static_cast<std::size_t>(i) * dim + c];
        v = scale * v + drift[c];
      }
    }
  }

  try {
    return Configuration(dim, m, std::move(positions), std::move(velocities));
  } catch (const std::invalid_argument& err) {
    throw std::invalid_argument(std::string("config validation: ") + err.what());
  }
}

std::string serialize_configuration(const Configuration& config) {
  json agents = json::array();
  const int n = config.agent_count();
  const int dim = config.dimension;
  for (int i = 0; i < n; ++i) {
    json x = json::array();
    json v = json::array();
    for (int c = 0; c < dim; ++c) {
      x.push_back(config.positions[static_cast<std::size_t>(i) * dim + c]);
      v.push_back(config.velocities[static_cast<std::size_t>(i) * dim + c]);
    }
    agents.push_back(json{{"x", std::move(x)}, {"v", std::move(v)}});
  }
  const json doc{{"schema", kSchemaVersion},
                 {"dimension", dim},
                 {"m", config.neighbor_count},
                 {"agents", std::move(agents)}};
  return doc.dump(2) + "\n";
}

std::string serialize_certificate(const Certificate& cert) {
  json doc{{"schema", kSchemaVersion},
           {"kind", "flocking-certificate"},
           {"config_digest", cert.config_digest},
           {"rho", cert.rho},
           {"root", cert.root + 1},
           {"threshold", cert.threshold},
           {"delta_n0", cert.delta_n0},
           {"margin", cert.margin},
           {"verdict", to_string(cert.verdict)},
           {"graph_rho", cert.graph_rho},
           {"hierarchy_on_nominal", cert.hierarchy_on_nominal},
           {"warnings", cert.warnings}};
  if (cert.hierarchy.root >= 0) {
    doc["hierarchy"] = hierarchy_to_json(cert.hierarchy);
  }
  if (!cert.schedule.dwell_times.empty()) {
    doc["schedule"] = schedule_to_json(cert.schedule);
  }
  if (!cert.table.empty()) {
    json table = json::array();
    for (const CandidateRow& row : cert.table) table.push_back(candidate_to_json(row));
    doc["candidates"] = std::move(table);
  }
  return doc.dump(2) + "\n";
}

Certificate parse_certificate(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("certificate parse error: ") + err.what());
  }
  Certificate cert;
  cert.config_digest = doc.at("config_digest").get<std::string>();
  cert.rho = doc.at("rho").get<double>();
  cert.root = doc.at("root").get<int>() - 1;
  cert.threshold = doc.at("threshold").get<double>();
  cert.delta_n0 = doc.at("delta_n0").get<double>();
  cert.margin = doc.at("margin").get<double>();
  cert.graph_rho = doc.value("graph_rho", 0.0);
  cert.hierarchy_on_nominal = doc.value("hierarchy_on_nominal", false);
  const std::string verdict = doc.at("verdict").get<std::string>();
  if (verdict == "certified") {
    cert.verdict = Verdict::Certified;
  } else if (verdict == "not-certified") {
    cert.verdict = Verdict::NotCertified;
  } else {
    cert.verdict = Verdict::Uncertifiable;
  }
  cert.warnings = doc.value("warnings", std::vector<std::string>{});
  if (doc.contains("hierarchy")) cert.hierarchy = hierarchy_from_json(doc.at("hierarchy"));
  if (doc.contains("schedule")) cert.schedule = schedule_from_json(doc.at("schedule"));
  if (doc.contains("candidates")) {
    for (const json& row : doc.at("candidates")) {
      cert.table.push_back(candidate_from_json(row));
    }
  }
  return cert;
}

std::string serialize_robustness_report(const RobustnessReport& report, int agent_count) {
  json doc{{"schema", kSchemaVersion},
           {"kind", "robustness-report"},
           {"has_spanning_tree", report.has_spanning_tree}};
  json edges = json::array();
  for (int i = 0; i < agent_count; ++i) {
    for (int j = 0; j < agent_count; ++j) {
      const double s = report.edge_s[static_cast<std::size_t>(i) * agent_count + j];
      if (!std::isnan(s)) {
        edges.push_back(json{{"from", j + 1}, {"to", i + 1}, {"robustness", s}});
      }
    }
  }
  doc["edges"] = std::move(edges);
  json roots = json::array();
  for (int r = 0; r < agent_count; ++r) {
    const double rho = report.root_rho[r];
    json row{{"root", r + 1}};
    if (std::isinf(rho) && rho < 0) {
      row["reachable"] = false;
    } else {
      row["reachable"] = true;
      row["rho"] = rho;
    }
    roots.push_back(std::move(row));
  }
  doc["roots"] = std::move(roots);
  if (report.has_spanning_tree) {
    doc["graph_rho"] = report.graph_rho;
    doc["best_root"] = report.best_root + 1;
    json co = json::array();
    for (int r : report.co_optimal_roots) co.push_back(r + 1);
    doc["co_optimal_roots"] = std::move(co);
    json core = json::array();
    for (int i = 0; i < agent_count; ++i) {
      json row = json::array();
      for (int j = 0; j < agent_count; ++j) {
        row.push_back(report.core.a(i, j) ? 1 : 0);
      }
      core.push_back(std::move(row));
    }
    doc["core_subgraph"] = std::move(core);
  }
  return doc.dump(2) + "\n";
}

std::string serialize_sweep_table(const BoundResult& result) {
  json doc{{"schema", kSchemaVersion},
           {"kind", "bound-sweep"},
           {"certifiable", result.certifiable}};
  if (result.certifiable) {
    doc["best_rho"] = result.best_rho;
    doc["best_root"] = result.best_root + 1;
    doc["bound"] = result.bound;
    json table = json::array();
    for (const CandidateRow& row : result.table) table.push_back(candidate_to_json(row));
    doc["candidates"] = std::move(table);
  }
  return doc.dump(2) + "\n";
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
  const int dim = trajectory.dimension;
  std::string line = "t\tagent";
  for (int c = 1; c <= dim; ++c) line += "\tx" + std::to_string(c);
  for (int c = 1; c <= dim; ++c) line += "\tv" + std::to_string(c);
  out << line << "\n";
  for (std::size_t idx = 0; idx < trajectory.states.size(); ++idx) {
    const State& state = trajectory.states[idx];
    for (int i = 0; i < trajectory.agent_count; ++i) {
      line.clear();
      append_17g(line, trajectory.times[idx]);
      line += "\t" + std::to_string(i + 1);
      for (int c = 0; c < dim; ++c) {
        line += "\t";
        append_17g(line, state.positions[static_cast<std::size_t>(i) * dim + c]);
      }
      for (int c = 0; c < dim; ++c) {
        line += "\t";
        append_17g(line, state.velocities[static_cast<std::size_t>(i) * dim + c]);
      }
      out << line << "\n";
    }
  }
}

void write_diagnostics(std::ostream& out, const Trajectory& trajectory) {
  out << "t\tdelta_N\ttree_preserved\thypothesis1\tdisplacement_max\n";
  std::string line;
  for (std::size_t idx = 0; idx < trajectory.diagnostics.size(); ++idx) {
    const StepDiagnostics& diag = trajectory.diagnostics[idx];
    line.clear();
    append_17g(line, trajectory.times[idx]);
    line += "\t";
    append_17g(line, diag.delta_n);
    line += diag.h_rho_contained ? "\t1" : "\t0";
    line += diag.hypothesis1 ? "\t1" : "\t0";
    line += "\t";
    append_17g(line, diag.displacement_max);
    out << line << "\n";
  }
}

std::string serialize_monitor_report(const MonitorReport& report) {
  json doc{{"schema", kSchemaVersion},
           {"kind", "monitor-report"},
           {"tree_preserved_until", report.tree_preserved_until},
           {"tree_preserved_throughout", report.tree_preserved_throughout},
           {"envelope_checks", report.envelope_checks},
           {"displacement_max", report.displacement_max},
           {"displacement_within_rho", report.displacement_within_rho},
           {"alignment_reached", report.alignment_reached},
           {"delta_n_end", report.delta_n_end},
           {"epsilon_int", report.epsilon_int},
           {"terminal_mean_velocity", report.terminal_mean_velocity}};
  json violations = json::array();
  for (const EnvelopeViolation& v : report.envelope_violations) {
    violations.push_back(json{{"q", v.q}, {"delta", v.delta}, {"bound", v.bound}});
  }
  doc["envelope_violations"] = std::move(violations);
  if (report.disconnection_time) {
    doc["disconnection_time"] = *report.disconnection_time;
  }
  if (report.hypothesis_violated_at) {
    doc["hypothesis_violated_at"] = *report.hypothesis_violated_at;
  }
  return doc.dump(2) + "\n";
}

}  // namespace flock::io
