#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

namespace ddstab {

/// Convergence criterion applied to recorded trajectories: node i counts as
/// converged when max |x_i| over the final `window_fraction` of the horizon
/// stays below `x_tol`.
struct ConvergenceCriterion {
  double x_tol = 1e-3;
  double window_fraction = 0.05;
};

struct TrajectorySummary {
  double max_final_x = 0.0;
  double mean_final_gain = 0.0;
  /// Earliest recorded time after which every |x_i| stays below x_tol.
  std::optional<double> t_convergence;
};

/// Recorded closed-loop time series.
struct Trajectory {
  Eigen::Index n = 0;
  bool adaptive = false;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  /// Per-sample gains; constant for fixed-gain runs.
  std::vector<Eigen::VectorXd> gains;
  /// Optional functional series aligned with `times` (empty when not recorded).
  std::vector<double> lyapunov_s;
  std::vector<double> lyapunov_m;

  ConvergenceCriterion criterion;
  std::vector<bool> converged;
  TrajectorySummary summary;

  std::size_t size() const { return times.size(); }
  bool all_converged() const;
};

/// Recomputes `converged` and `summary` from the recorded samples.
void evaluate_convergence(Trajectory& traj, const ConvergenceCriterion& criterion = {});

}  // namespace ddstab
