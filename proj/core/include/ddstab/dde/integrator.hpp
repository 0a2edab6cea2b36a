#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ddstab/dde/history_buffer.hpp"
#include "ddstab/systems/delay_spec.hpp"

namespace ddstab::dde {

/// Delayed states x(t - T_l(t)), one full-dimension vector per delay.
using DelayedStates = std::span<const Eigen::VectorXd>;

/// Right-hand side of x'(t) = F(t, x(t), x(t - T_1(t)), ..., x(t - T_r(t))).
struct DelayedRhs {
  using Fn = std::function<void(double t, const Eigen::VectorXd& x, DelayedStates delayed,
                                Eigen::VectorXd& dxdt)>;

  Eigen::Index dim = 0;
  std::vector<systems::DelaySpec> delays;
  Fn eval;
};

struct SolverConfig {
  double h = 1e-3;
  double horizon = 1.0;
  int record_stride = 1;
  /// Initial time sigma.
  double start_time = 0.0;

  /// Number of steps covering the horizon.
  std::size_t step_count() const;
  /// Throws ConfigError on h <= 0, horizon < h, stride < 1.
  void validate() const;
};

/// Initial function phi(theta), theta in [-window, 0].
using InitialFunction = std::function<Eigen::VectorXd(double theta)>;

/// One classical RK4 step from the buffer's newest knot (time t) to t + h.
/// Delayed arguments are resolved through the buffer at every stage. When
/// start_slope is non-null it receives F at the starting point.
Eigen::VectorXd step_rk4(const DelayedRhs& rhs, const HistoryBuffer& buf, double t, double h,
                         Eigen::VectorXd* start_slope = nullptr);

/// Called on every recorded step with the step index, time and buffer.
using RecordHook = std::function<void(std::size_t step, double t, const HistoryBuffer& buf)>;

/// Fixed-step integration over [sigma, sigma + horizon]. phi is sampled on
/// the step grid over [sigma - window, sigma]. Requires h <= min delay / 2
/// and window >= max delay. Records step 0, every record_stride-th step and
/// the final step.
void integrate(const DelayedRhs& rhs, const InitialFunction& phi, const SolverConfig& cfg,
               double window, const RecordHook& on_record);

/// Seeds a buffer with phi on the step grid, ending exactly at sigma.
HistoryBuffer seed_history(const InitialFunction& phi, Eigen::Index dim, double window,
                           double sigma, double h);

}  // namespace ddstab::dde
