#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ddstab/certificates/report.hpp"
#include "ddstab/control/controller.hpp"
#include "ddstab/dde/integrator.hpp"
#include "ddstab/experiments/config.hpp"
#include "ddstab/lyapunov/monitor.hpp"
#include "ddstab/systems/coupling_graph.hpp"
#include "ddstab/systems/delayed_network.hpp"
#include "ddstab/trajectory.hpp"

namespace ddstab::experiments {

/// Everything needed to integrate one configuration.
struct BuiltModel {
  systems::DelayedNetwork network;
  std::optional<systems::CouplingGraph> graph;  // SIS only
  control::Controller controller;
  dde::InitialFunction phi;
  dde::SolverConfig solver;
};

BuiltModel build(const ExperimentConfig& cfg);

struct RunResult {
  Trajectory trajectory;
  nlohmann::json summary;
  std::optional<lyapunov::DecreaseReport> decrease;
  std::vector<std::string> files;
};

/// Builds, simulates and (when outputs.dir is set) writes trajectory.csv,
/// summary.json, lyapunov.json and graph.txt.
RunResult run(const ExperimentConfig& cfg);

/// max_i (max - min of k_i over the final `fraction` of the recorded horizon).
double gain_variation(const Trajectory& traj, double fraction = 0.10);

struct CompareRow {
  std::uint64_t seed = 0;
  bool adaptive_converged_all = false;
  bool fixed_converged_all = false;
  double adaptive_mean_final_gain = 0.0;
  double fixed_worst_final_x = 0.0;
  std::size_t adaptive_nonconverged_nodes = 0;
  std::size_t fixed_nonconverged_nodes = 0;
};

/// Runs both controllers per seed on identical model settings. Throws
/// ConfigError when the configs differ in anything but the controller.
std::vector<CompareRow> compare(const ExperimentConfig& adaptive_cfg, const ExperimentConfig& fixed_cfg,
                                const std::vector<std::uint64_t>& seeds);

/// Copy of `cfg` with a fixed-gain controller at level k.
ExperimentConfig with_fixed_gain(const ExperimentConfig& cfg, double k);

struct SweepRow {
  std::uint64_t seed = 0;
  bool converged_all = false;
  std::size_t nonconverged_nodes = 0;
  double max_final_x = 0.0;
  double mean_final_gain = 0.0;
  double gain_variation = 0.0;
  std::optional<double> t_convergence;
};

std::vector<SweepRow> sweep(const ExperimentConfig& cfg, const std::vector<std::uint64_t>& seeds);

struct NamedReport {
  std::string name;
  certificates::CertificateReport report;
};

struct CertifyResult {
  std::vector<NamedReport> reports;
  double a_estimate = 0.0;
  double a_used = 0.0;
  /// Uniform gain above which the closed-loop certificate follows.
  std::optional<double> gain_bound;
  nlohmann::json summary;
  std::vector<std::string> files;
};

/// Runs the dominance checks appropriate to the model's feedback form and
/// derives the sufficient gain level. Writes one JSON per report plus
/// certify_summary.json when outputs.dir is set.
CertifyResult certify(const ExperimentConfig& cfg);

void write_compare_csv(const std::string& path, const std::vector<CompareRow>& rows);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace ddstab::experiments
