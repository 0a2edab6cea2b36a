#pragma once

#include <cstddef>
#include <deque>

#include <Eigen/Core>

namespace ddstab::dde {

/// Sliding window of time-stamped state samples with C1 piecewise-cubic
/// Hermite interpolation between knots.
///
/// A knot may carry explicit one-sided slopes (the integrator stores the
/// right-hand side evaluated at each knot). Knots without slopes fall back
/// to three-point finite differences over their neighbours, one-sided at
/// the ends of the buffer. Evaluating exactly at a knot time returns the
/// stored state bit-for-bit.
class HistoryBuffer {
 public:
  HistoryBuffer(Eigen::Index dim, double window);

  Eigen::Index dim() const { return dim_; }
  double window() const { return window_; }
  std::size_t size() const { return knots_.size(); }
  bool empty() const { return knots_.empty(); }

  double front_time() const;
  double back_time() const;
  double knot_time(std::size_t k) const { return knots_[k].t; }
  const Eigen::VectorXd& knot_state(std::size_t k) const { return knots_[k].x; }
  const Eigen::VectorXd& back_state() const;

  /// Appends a knot; t must exceed the current back time.
  void push(double t, Eigen::VectorXd x);

  /// Sets both one-sided slopes of the newest knot.
  void set_back_slope(const Eigen::VectorXd& slope);
  /// Sets only the right slope of the newest knot (used at the junction
  /// between the initial function and the integrated solution).
  void set_back_right_slope(const Eigen::VectorXd& slope);

  /// Stores the current one-sided finite-difference slope of the newest
  /// knot so later pushes do not turn it into a centered difference.
  void freeze_back_slope();

  /// Drops knots no longer needed to cover [t_now - window, t_now]. One
  /// extra knot before the window start is retained.
  void trim(double t_now);

  Eigen::VectorXd eval(double t) const;
  void eval_into(double t, Eigen::Ref<Eigen::VectorXd> out) const;
  double eval_component(double t, Eigen::Index i) const;

 private:
  struct Knot {
    double t;
    Eigen::VectorXd x;
    Eigen::VectorXd left;   // empty when not supplied
    Eigen::VectorXd right;  // empty when not supplied
  };

  // Index k such that knots_[k].t <= t < knots_[k+1].t, or exact match flag.
  std::size_t locate(double t, bool& exact) const;
  double fd_slope(std::size_t k, Eigen::Index i) const;
  double right_slope(std::size_t k, Eigen::Index i) const;
  double left_slope(std::size_t k, Eigen::Index i) const;

  Eigen::Index dim_;
  double window_;
  std::deque<Knot> knots_;
};

}  // namespace ddstab::dde
