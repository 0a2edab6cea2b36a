#pragma once

#include <cstdint>
#include <functional>

#include "ddstab/control/closed_loop.hpp"
#include "ddstab/control/controller.hpp"
#include "ddstab/dde/integrator.hpp"
#include "ddstab/systems/delayed_network.hpp"
#include "ddstab/trajectory.hpp"

namespace ddstab::dde {

struct SimulateOptions {
  control::AssemblyOptions assembly;
  ConvergenceCriterion criterion;
  /// Invoked after each recorded sample has been appended to `traj`.
  std::function<void(double t, const HistoryBuffer& buf, Trajectory& traj)> on_record;
};

/// Integrates the closed loop of `network` under `controller` from the
/// plant initial function phi (dimension n) and records (t, x, k).
Trajectory simulate(const systems::DelayedNetwork& network, const control::Controller& controller,
                    const InitialFunction& phi, const SolverConfig& cfg,
                    const SimulateOptions& options = {});

/// phi(theta) = x0 for all theta.
InitialFunction constant_phi(Eigen::VectorXd x0);

/// Constant-in-theta initial function with entries drawn uniformly from
/// [lo, hi) using the given seed.
InitialFunction uniform_constant_phi(Eigen::Index n, double lo, double hi, std::uint64_t seed);

}  // namespace ddstab::dde
