#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include <nlohmann/json.hpp>

#include "ddstab/dde/history_buffer.hpp"
#include "ddstab/lyapunov/functionals.hpp"
#include "ddstab/trajectory.hpp"

namespace ddstab::lyapunov {

struct DecreaseReport {
  /// First recorded time with min_i k_i(t) > gate; empty when never reached.
  std::optional<double> t_star;
  /// Share of checked steps after t_star with D+V_s <= tol.
  double fraction = 0.0;
  /// Largest D+V_s - tol over checked steps (<= 0 when none violate).
  double worst_violation = 0.0;
  double tol = 0.0;
  std::size_t steps_checked = 0;
  std::size_t steps_blacked_out = 0;

  bool gate_reached() const { return t_star.has_value(); }
};

/// Checks that V_s decreases along `traj` once every gain exceeds `gate`.
/// Requires traj.lyapunov_s. Steps adjacent to a sign change of any x_i are
/// skipped (|x_i| has a kink there).
DecreaseReport monitor_decrease(const Trajectory& traj, const FunctionalConfig& cfg, double gate);

/// Record hook for dde::simulate that appends V_s and V_m to the trajectory.
std::function<void(double, const dde::HistoryBuffer&, Trajectory&)> make_functional_recorder(
    FunctionalConfig cfg);

nlohmann::json to_json(const DecreaseReport& report);

}  // namespace ddstab::lyapunov
