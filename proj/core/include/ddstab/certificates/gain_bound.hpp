#pragma once

#include <Eigen/Core>

namespace ddstab::certificates {

/// Smallest uniform gain level for which the column-dominance certificate
/// of the closed loop follows from input-matrix dominance with margin c:
///   max_j (a r / (c (1 - d))) (1 + sum_i v_i / v_j).
/// Gains strictly above the returned value certify the sampled domain.
double required_gain_bound(double a, int r, double d, double c, const Eigen::VectorXd& v);

/// Output-feedback counterpart: max_i (a r / c) (1 + sum_j w_j / w_i).
double required_gain_bound_dual(double a, int r, double c, const Eigen::VectorXd& w);

}  // namespace ddstab::certificates
