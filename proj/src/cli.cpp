#include "flock/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "flock/certificate.hpp"
#include "flock/io.hpp"
#include "flock/robustness.hpp"
#include "flock/simulator.hpp"

namespace flock {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << content;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

}  // namespace

int run_command(int argc, const char* const* argv) {
  CLI::App app{"A priori flocking certificates for topological multi-agent systems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  std::optional<double> rho_override;
  std::optional<int> root_override;

  CLI::App* cmd_certify = app.add_subcommand(
      "certify", "Evaluate the flocking certificate for a configuration");
  cmd_certify->add_option("config", config_path, "configuration document")->required();
  cmd_certify->add_option("--rho", rho_override, "disturbance bound override");
  cmd_certify->add_option("--root", root_override, "root agent override (1-based)");
  cmd_certify->add_option("-o,--output", output, "certificate file (default stdout)");

  double dt = 1e-3;
  double t_end = 50.0;
  std::string certificate_path;
  CLI::App* cmd_simulate = app.add_subcommand(
      "simulate", "Integrate the switched dynamics and record diagnostics");
  cmd_simulate->add_option("config", config_path, "configuration document")->required();
  cmd_simulate->add_option("--dt", dt, "integration step (default 1e-3)");
  cmd_simulate->add_option("--t-end", t_end, "horizon (default 50)");
  cmd_simulate->add_option("--certificate", certificate_path,
                           "certificate to monitor the run against");
  cmd_simulate->add_option("-o,--output", output, "output file prefix")->required();

  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep", "Emit the full (rho, root) candidate table");
  cmd_sweep->add_option("config", config_path, "configuration document")->required();
  cmd_sweep->add_option("-o,--output", output, "table file (default stdout)");

  CLI::App* cmd_robustness = app.add_subcommand(
      "robustness", "Edge, root and graph robustness of the initial graph");
  cmd_robustness->add_option("config", config_path, "configuration document")->required();
  cmd_robustness->add_option("-o,--output", output, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    // --help and --version are "errors" with exit code 0 in CLI11
    return app.exit(err) == 0 ? 0 : 2;
  }

  try {
    const Configuration config = io::parse_config(read_file(config_path));

    if (cmd_certify->parsed()) {
      CertifyOverrides overrides;
      overrides.rho = rho_override;
      if (root_override) overrides.root = *root_override - 1;
      const Certificate cert = certify(config, overrides);
      emit(output, io::serialize_certificate(cert));
      return cert.verdict == Verdict::Certified ? 0 : 1;
    }

    if (cmd_simulate->parsed()) {
      std::optional<Certificate> cert;
      SimulationReference ref;
      const SimulationReference* ref_ptr = nullptr;
      if (!certificate_path.empty()) {
        cert = io::parse_certificate(read_file(certificate_path));
        if (cert->config_digest != io::config_digest(config)) {
          std::cerr << "certificate was issued for a different configuration\n";
          return 2;
        }
        ref.h = perturbed_core_graph(config.positions, config.dimension,
                                     config.neighbor_count, cert->rho);
        ref.hierarchy = cert->hierarchy;
        ref.hierarchy_valid = cert->hierarchy.root >= 0;
        ref_ptr = &ref;
      }
      const Trajectory traj = simulate(config, dt, t_end, ref_ptr);
      {
        std::ofstream out(output + ".trajectory.tsv");
        if (!out) throw std::invalid_argument("cannot write " + output + ".trajectory.tsv");
        io::write_trajectory(out, traj);
      }
      {
        std::ofstream out(output + ".diagnostics.tsv");
        if (!out) throw std::invalid_argument("cannot write " + output + ".diagnostics.tsv");
        io::write_diagnostics(out, traj);
      }
      if (cert) {
        const MonitorReport report = monitor_report(traj, *cert);
        write_file(output + ".monitor.json", io::serialize_monitor_report(report));
      }
      if (traj.aborted_nonfinite) {
        std::cerr << "warning: non-finite state at t = " << traj.abort_time
                  << "; trajectory truncated\n";
      }
      return 0;
    }

    if (cmd_sweep->parsed()) {
      const BoundResult result =
          optimize_bound(config.positions, config.dimension, config.neighbor_count);
      emit(output, io::serialize_sweep_table(result));
      return 0;
    }

    if (cmd_robustness->parsed()) {
      const RobustnessReport report =
          graph_robustness(config.positions, config.dimension, config.neighbor_count);
      emit(output, io::serialize_robustness_report(report, config.agent_count()));
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace flock
