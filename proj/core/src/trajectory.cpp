#include "ddstab/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace ddstab {

bool Trajectory::all_converged() const {
  return !converged.empty() && std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
}

void evaluate_convergence(Trajectory& traj, const ConvergenceCriterion& criterion) {
  traj.criterion = criterion;
  traj.converged.assign(static_cast<std::size_t>(traj.n), false);
  traj.summary = {};
  if (traj.times.empty()) return;

  const double t0 = traj.times.front();
  const double t1 = traj.times.back();
  const double window_start = t1 - criterion.window_fraction * (t1 - t0);

  Eigen::VectorXd window_max = Eigen::VectorXd::Zero(traj.n);
  for (std::size_t s = 0; s < traj.size(); ++s) {
    if (traj.times[s] < window_start) continue;
    window_max = window_max.cwiseMax(traj.states[s].cwiseAbs());
  }
  for (Eigen::Index i = 0; i < traj.n; ++i) {
    traj.converged[static_cast<std::size_t>(i)] = window_max[i] < criterion.x_tol;
  }

  traj.summary.max_final_x = traj.states.back().cwiseAbs().maxCoeff();
  if (!traj.gains.empty()) traj.summary.mean_final_gain = traj.gains.back().mean();

  // Scan backwards for the last sample above tolerance.
  std::size_t first_good = traj.size();
  for (std::size_t s = traj.size(); s-- > 0;) {
    if (traj.states[s].cwiseAbs().maxCoeff() >= criterion.x_tol) break;
    first_good = s;
  }
  if (first_good < traj.size()) traj.summary.t_convergence = traj.times[first_good];
}

}  // namespace ddstab
