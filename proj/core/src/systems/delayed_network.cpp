#include "ddstab/systems/delayed_network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ddstab/errors.hpp"

namespace ddstab::systems {

namespace {

constexpr double kOriginTol = 1e-12;
constexpr double kSpotTimes[] = {0.0, 1.0, 17.5};

std::vector<Eigen::VectorXd> zero_delayed(Eigen::Index n, std::size_t r) {
  return std::vector<Eigen::VectorXd>(r, Eigen::VectorXd::Zero(n));
}

}  // namespace

DelayedNetwork DelayedNetwork::state_feedback(Eigen::Index n, std::vector<DelaySpec> delays,
                                              VectorFn drift, MatrixFn input_matrix,
                                              ApplyFn input_apply, Jacobians jacobians) {
  if (n <= 0) throw ParameterError("network needs n > 0 nodes");
  if (!drift) throw ParameterError("network drift is not set");
  if (!input_matrix) throw ParameterError("state-feedback network needs an input matrix");
  DelayedNetwork net;
  net.n_ = n;
  net.delays_ = std::move(delays);
  net.form_ = FeedbackForm::state_feedback;
  net.drift_ = std::move(drift);
  net.input_matrix_ = std::move(input_matrix);
  net.input_apply_ = std::move(input_apply);
  net.jac_ = std::move(jacobians);
  net.check_origin();
  return net;
}

DelayedNetwork DelayedNetwork::output_feedback(Eigen::Index n, std::vector<DelaySpec> delays,
                                               VectorFn drift, VectorFn output_map,
                                               Jacobians jacobians) {
  if (n <= 0) throw ParameterError("network needs n > 0 nodes");
  if (!drift) throw ParameterError("network drift is not set");
  if (!output_map) throw ParameterError("output-feedback network needs an output map");
  DelayedNetwork net;
  net.n_ = n;
  net.delays_ = std::move(delays);
  net.form_ = FeedbackForm::output_feedback;
  net.drift_ = std::move(drift);
  net.output_map_ = std::move(output_map);
  net.jac_ = std::move(jacobians);
  net.check_origin();
  return net;
}

void DelayedNetwork::check_origin() const {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n_);
  const auto y = zero_delayed(n_, delays_.size());
  for (double t : kSpotTimes) {
    const Eigen::VectorXd f0 = drift_(t, zero, y);
    if (f0.size() != n_) throw ParameterError("drift returned a vector of wrong size");
    if (f0.cwiseAbs().maxCoeff() > kOriginTol) {
      throw ParameterError("drift does not vanish at the origin (t=" + std::to_string(t) + ")");
    }
    if (output_map_) {
      const Eigen::VectorXd h0 = output_map_(t, zero, y);
      if (h0.size() != n_) throw ParameterError("output map returned a vector of wrong size");
      if (h0.cwiseAbs().maxCoeff() > kOriginTol) {
        throw ParameterError("output map does not vanish at the origin");
      }
    }
  }
}

double DelayedNetwork::max_delay() const {
  double m = 0.0;
  for (const auto& d : delays_) m = std::max(m, d.upper_bound());
  return m;
}

double DelayedNetwork::min_delay() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& d : delays_) m = std::min(m, d.lower_bound());
  return m;
}

double DelayedNetwork::derivative_bound() const {
  double m = 0.0;
  for (const auto& d : delays_) m = std::max(m, d.derivative_bound());
  return m;
}

Eigen::MatrixXd DelayedNetwork::input_matrix(double t, const Eigen::VectorXd& x,
                                             DelayedStates y) const {
  if (!input_matrix_) throw Error("network has no input matrix (output-feedback form)");
  return input_matrix_(t, x, y);
}

Eigen::VectorXd DelayedNetwork::apply_input(double t, const Eigen::VectorXd& x, DelayedStates y,
                                            const Eigen::VectorXd& u) const {
  if (input_apply_) return input_apply_(t, x, y, u);
  return input_matrix(t, x, y) * u;
}

Eigen::VectorXd DelayedNetwork::output_map(double t, const Eigen::VectorXd& x,
                                           DelayedStates y) const {
  if (!output_map_) throw Error("network has no output map (state-feedback form)");
  return output_map_(t, x, y);
}

Eigen::MatrixXd DelayedNetwork::drift_jacobian_x(double t, const Eigen::VectorXd& x,
                                                 DelayedStates y) const {
  if (jac_.drift_x) return jac_.drift_x(t, x, y);
  return numeric_jacobian([&](const Eigen::VectorXd& p) { return drift_(t, p, y); }, x);
}

Eigen::MatrixXd DelayedNetwork::drift_jacobian_y(double t, const Eigen::VectorXd& x,
                                                 DelayedStates y, std::size_t l) const {
  if (l >= delays_.size()) throw ParameterError("delay index out of range");
  if (jac_.drift_y) return jac_.drift_y(t, x, y, l);
  std::vector<Eigen::VectorXd> ys(y.begin(), y.end());
  return numeric_jacobian(
      [&](const Eigen::VectorXd& p) {
        ys[l] = p;
        return drift_(t, x, DelayedStates(ys));
      },
      y[l]);
}

Eigen::MatrixXd DelayedNetwork::output_jacobian_x(double t, const Eigen::VectorXd& x,
                                                  DelayedStates y) const {
  if (!output_map_) throw Error("network has no output map (state-feedback form)");
  if (jac_.output_x) return jac_.output_x(t, x, y);
  return numeric_jacobian([&](const Eigen::VectorXd& p) { return output_map_(t, p, y); }, x);
}

Eigen::MatrixXd numeric_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& fn,
                                 const Eigen::VectorXd& x) {
  const Eigen::VectorXd f0 = fn(x);
  Eigen::MatrixXd jac(f0.size(), x.size());
  Eigen::VectorXd p = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double step = 1e-6 * std::max(1.0, std::abs(x[j]));
    p[j] = x[j] + step;
    const Eigen::VectorXd fp = fn(p);
    p[j] = x[j] - step;
    const Eigen::VectorXd fm = fn(p);
    p[j] = x[j];
    jac.col(j) = (fp - fm) / (2.0 * step);
  }
  return jac;
}

}  // namespace ddstab::systems
