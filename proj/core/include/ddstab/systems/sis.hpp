#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Core>

#include "ddstab/systems/coupling_graph.hpp"
#include "ddstab/systems/delayed_network.hpp"
#include "ddstab/trajectory.hpp"

namespace ddstab::systems {

/// Uncontrolled SIS spreading term (1 - x_i) * sum_j c_{i,j} y_j.
Eigen::VectorXd sis_drift(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          const CouplingGraph& graph);

/// Delayed SIS network in state-feedback form with B = -I_n, so the
/// control u_i = k_i x_i acts as a recovery rate.
DelayedNetwork make_sis_network(const CouplingGraph& graph, double transmission_delay);

struct BoxViolation {
  double t;
  Eigen::Index node;
  double value;
};

struct BoxInvarianceReport {
  bool holds = true;
  std::optional<BoxViolation> first_violation;
};

/// Checks every recorded state against [-tol, 1 + tol]^n.
BoxInvarianceReport check_box_invariance(const Trajectory& traj, double tol = 1e-9);

}  // namespace ddstab::systems
