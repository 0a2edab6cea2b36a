#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ddstab/dde/history_buffer.hpp"
#include "ddstab/systems/delay_spec.hpp"

namespace ddstab::lyapunov {

struct FunctionalConfig {
  Eigen::VectorXd weights;  // v (or w), element-wise positive
  double a = 0.0;           // bound on the delayed Jacobian entries
  double d = 0.0;           // delay derivative bound, [0, 1)
  std::vector<systems::DelaySpec> delays;
  /// Use every k-th buffer knot inside each delay window.
  int quadrature_stride = 1;

  void validate() const;
};

/// Krasovskii-type functional
///   V_s = sum_i v_i (|x_i(t)| + a/(1-d) sum_l int_{t-T_l(t)}^t sum_j |x_j| dtheta)
/// evaluated on the first n = weights.size() buffer components. Integrals
/// use the composite trapezoid rule on the buffer knots with interpolated
/// endpoints.
double eval_Vs(const dde::HistoryBuffer& buf, double t, const FunctionalConfig& cfg);

/// Razumikhin-type function V_m = max_i |x_i| / w_i.
double eval_Vm(const Eigen::VectorXd& x, const Eigen::VectorXd& w);

/// Forward differences (V_{k+1} - V_k) / (t_{k+1} - t_k), stamped at t_k.
std::vector<std::pair<double, double>> dini_series(const std::vector<std::pair<double, double>>& values);

}  // namespace ddstab::lyapunov
