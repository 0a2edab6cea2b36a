#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ddstab/systems/delay_spec.hpp"

namespace ddstab::systems {

/// Delayed states y_1..y_r of the plant (each of dimension n).
using DelayedStates = std::span<const Eigen::VectorXd>;

using VectorFn =
    std::function<Eigen::VectorXd(double t, const Eigen::VectorXd& x, DelayedStates y)>;
using MatrixFn =
    std::function<Eigen::MatrixXd(double t, const Eigen::VectorXd& x, DelayedStates y)>;
/// Computes B(t, x, y) * u without forming B.
using ApplyFn = std::function<Eigen::VectorXd(double t, const Eigen::VectorXd& x, DelayedStates y,
                                              const Eigen::VectorXd& u)>;
/// Jacobian with respect to the l-th delayed state.
using DelayedJacobianFn = std::function<Eigen::MatrixXd(double t, const Eigen::VectorXd& x,
                                                        DelayedStates y, std::size_t l)>;

enum class FeedbackForm { state_feedback, output_feedback };

/// A network x' = f(t, x, y) + B(t, x, y) K x (state feedback) or
/// x' = f(t, x, y) + K H(t, x, y) (output feedback), y_l = x(t - T_l(t)).
class DelayedNetwork {
 public:
  /// Optional analytic Jacobians; finite differences are used when absent.
  struct Jacobians {
    MatrixFn drift_x;
    DelayedJacobianFn drift_y;
    MatrixFn output_x;
  };

  static DelayedNetwork state_feedback(Eigen::Index n, std::vector<DelaySpec> delays,
                                       VectorFn drift, MatrixFn input_matrix,
                                       ApplyFn input_apply = {}, Jacobians jacobians = {});
  static DelayedNetwork output_feedback(Eigen::Index n, std::vector<DelaySpec> delays,
                                        VectorFn drift, VectorFn output_map,
                                        Jacobians jacobians = {});

  Eigen::Index n() const { return n_; }
  std::size_t r() const { return delays_.size(); }
  FeedbackForm form() const { return form_; }
  const std::vector<DelaySpec>& delays() const { return delays_; }

  /// max_l upper bound of T_l.
  double max_delay() const;
  /// min_l lower bound of T_l; +inf without delays.
  double min_delay() const;
  /// max_l d_l.
  double derivative_bound() const;

  Eigen::VectorXd drift(double t, const Eigen::VectorXd& x, DelayedStates y) const {
    return drift_(t, x, y);
  }
  bool has_input_matrix() const { return static_cast<bool>(input_matrix_); }
  bool has_output_map() const { return static_cast<bool>(output_map_); }
  Eigen::MatrixXd input_matrix(double t, const Eigen::VectorXd& x, DelayedStates y) const;
  Eigen::VectorXd apply_input(double t, const Eigen::VectorXd& x, DelayedStates y,
                              const Eigen::VectorXd& u) const;
  Eigen::VectorXd output_map(double t, const Eigen::VectorXd& x, DelayedStates y) const;

  Eigen::MatrixXd drift_jacobian_x(double t, const Eigen::VectorXd& x, DelayedStates y) const;
  Eigen::MatrixXd drift_jacobian_y(double t, const Eigen::VectorXd& x, DelayedStates y,
                                   std::size_t l) const;
  Eigen::MatrixXd output_jacobian_x(double t, const Eigen::VectorXd& x, DelayedStates y) const;

 private:
  DelayedNetwork() = default;
  void check_origin() const;

  Eigen::Index n_ = 0;
  std::vector<DelaySpec> delays_;
  FeedbackForm form_ = FeedbackForm::state_feedback;
  VectorFn drift_;
  MatrixFn input_matrix_;
  ApplyFn input_apply_;
  VectorFn output_map_;
  Jacobians jac_;
};

/// Central-difference Jacobian of fn at x (step scaled per coordinate).
Eigen::MatrixXd numeric_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fn,
                                 const Eigen::VectorXd& x);

}  // namespace ddstab::systems
