#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "ddstab/certificates/sampler.hpp"
#include "ddstab/control/controller.hpp"
#include "ddstab/systems/delayed_network.hpp"
#include "ddstab/systems/linear_test.hpp"
#include "ddstab/trajectory.hpp"

namespace ddstab::experiments {

enum class ModelType { sis, linear_test, custom };

struct ModelConfig {
  ModelType type = ModelType::sis;
  // SIS
  Eigen::Index n = 200;
  int m = 5;
  std::uint64_t graph_seed = 1;
  double coupling_scale = 0.05;
  double delay = 50.0;
  // linear_test
  systems::LinearTestSpec linear;
  // custom (programmatic only)
  std::function<systems::DelayedNetwork()> custom_factory;
};

struct ControllerConfig {
  control::Controller::Mode mode = control::Controller::Mode::adaptive;
  // Length 1 broadcasts to all nodes.
  Eigen::VectorXd a = Eigen::VectorXd::Constant(1, 0.1);
  Eigen::VectorXd b = Eigen::VectorXd::Constant(1, 0.01);
  Eigen::VectorXd T_k = Eigen::VectorXd::Constant(1, 100.0);
  Eigen::VectorXd k0 = Eigen::VectorXd::Constant(1, 10.0);
  Eigen::VectorXd k_fixed = Eigen::VectorXd::Constant(1, 20.0);
  std::optional<Eigen::VectorXd> k_max;
  bool allow_gain_delay_beyond_history = false;
};

struct PhiConfig {
  enum class Type { uniform_const, constant };
  Type type = Type::uniform_const;
  double lo = 0.0;
  double hi = 1.0;
  std::uint64_t seed = 1;
  Eigen::VectorXd values;  // Type::constant; length 1 broadcasts
};

struct SimConfig {
  double h = 0.05;
  double horizon = 5000.0;
  int record_stride = 100;
  PhiConfig phi;
};

struct LyapunovOutputConfig {
  std::optional<Eigen::VectorXd> weights;  // default: all ones
  double a = 0.0;
  double d = 0.0;
  double c = 1.0;
  /// "required_gain_bound" computes the gate from (a, r, d, c, weights).
  std::optional<double> gate;
  int quadrature_stride = 1;
};

struct OutputConfig {
  std::string dir;  // empty: no files are written
  bool write_trajectory = true;
  bool emit_lyapunov = false;
  LyapunovOutputConfig lyapunov;
};

struct CertifyConfig {
  certificates::SamplingDomain domain;
  bool search_weights = false;
  double a_safety_factor = 1.2;
};

struct ExperimentConfig {
  ModelConfig model;
  ControllerConfig controller;
  SimConfig sim;
  OutputConfig outputs;
  CertifyConfig certify;
  ConvergenceCriterion criterion;
  /// Seeds for sweeps/comparisons.
  std::vector<std::uint64_t> seeds;
  /// Fixed gain used by `compare` when no separate fixed config is given.
  std::optional<double> compare_fixed_gain;

  /// Field-level checks; throws ConfigError.
  void validate() const;
};

/// Parses the JSON schema documented in the README; throws ConfigError
/// naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

/// SIS epidemic case study: n=200, m=5, T=50, T_k=100, a=0.1, b=0.01, k0=10.
ExperimentConfig sis_case_study();

/// Overrides the graph seed and the initial-function seed.
void apply_seed(ExperimentConfig& cfg, std::uint64_t seed);

/// Broadcasts a length-1 vector to n entries; checks the length otherwise.
Eigen::VectorXd broadcast(const Eigen::VectorXd& v, Eigen::Index n, const char* field);

}  // namespace ddstab::experiments
