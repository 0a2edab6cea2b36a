#include "ddstab/systems/sis.hpp"

#include <string>
#include <utility>

#include "ddstab/errors.hpp"

namespace ddstab::systems {

Eigen::VectorXd sis_drift(double /*t*/, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          const CouplingGraph& graph) {
  if (x.size() != graph.n || y.size() != graph.n) {
    throw ParameterError("sis_drift: expected vectors of size " + std::to_string(graph.n));
  }
  const Eigen::VectorXd pressure = graph.weights * y;
  return (Eigen::VectorXd::Ones(graph.n) - x).cwiseProduct(pressure);
}

DelayedNetwork make_sis_network(const CouplingGraph& graph, double transmission_delay) {
  const Eigen::Index n = graph.n;
  auto drift = [graph](double t, const Eigen::VectorXd& x, DelayedStates y) {
    return sis_drift(t, x, y[0], graph);
  };
  auto input = [n](double, const Eigen::VectorXd&, DelayedStates) -> Eigen::MatrixXd {
    return -Eigen::MatrixXd::Identity(n, n);
  };
  auto apply = [](double, const Eigen::VectorXd&, DelayedStates, const Eigen::VectorXd& u) {
    return Eigen::VectorXd(-u);
  };
  DelayedNetwork::Jacobians jac;
  jac.drift_x = [graph](double, const Eigen::VectorXd&, DelayedStates y) -> Eigen::MatrixXd {
    return Eigen::MatrixXd((-(graph.weights * y[0])).asDiagonal());
  };
  jac.drift_y = [graph](double, const Eigen::VectorXd& x, DelayedStates, std::size_t) {
    const Eigen::MatrixXd c(graph.weights);
    return Eigen::MatrixXd((Eigen::VectorXd::Ones(graph.n) - x).asDiagonal() * c);
  };
  return DelayedNetwork::state_feedback(n, {DelaySpec::constant(transmission_delay)},
                                        std::move(drift), std::move(input), std::move(apply),
                                        std::move(jac));
}

BoxInvarianceReport check_box_invariance(const Trajectory& traj, double tol) {
  BoxInvarianceReport report;
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const Eigen::VectorXd& x = traj.states[s];
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (!(x[i] >= -tol && x[i] <= 1.0 + tol)) {
        report.holds = false;
        report.first_violation = BoxViolation{traj.times[s], i, x[i]};
        return report;
      }
    }
  }
  return report;
}

}  // namespace ddstab::systems
