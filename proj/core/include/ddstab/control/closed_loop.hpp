#pragma once

#include <vector>

#include "ddstab/control/controller.hpp"
#include "ddstab/dde/integrator.hpp"
#include "ddstab/systems/delayed_network.hpp"

namespace ddstab::control {

struct AssemblyOptions {
  /// Permit gain measurement delays beyond the plant's largest delay; the
  /// history window is then extended and the initial function evaluated
  /// over the longer interval.
  bool allow_gain_delay_beyond_history = false;
};

/// Augmented delay system. State layout: x (n entries) followed by k
/// (n entries) in adaptive mode; x only in fixed mode.
struct ClosedLoop {
  dde::DelayedRhs rhs;
  Eigen::Index n = 0;
  bool adaptive = false;
  /// History length the integrator must retain.
  double window = 0.0;
  /// Number of leading delays that belong to the plant.
  std::size_t plant_delays = 0;
};

/// x' = f + B diag(k) x (state feedback) or x' = f + diag(k) H (output
/// feedback); in adaptive mode k_i' follows the gain law with x_i looked
/// up at t - T_i. The delay set is the plant delays followed by the
/// distinct positive gain delays.
ClosedLoop assemble_closed_loop(const systems::DelayedNetwork& network,
                                const Controller& controller, const AssemblyOptions& options = {});

}  // namespace ddstab::control
