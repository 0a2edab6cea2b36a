#include "ddstab/lyapunov/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "ddstab/errors.hpp"

namespace ddstab::lyapunov {

DecreaseReport monitor_decrease(const Trajectory& traj, const FunctionalConfig& cfg, double gate) {
  if (traj.lyapunov_s.size() != traj.size()) {
    throw ParameterError("monitor_decrease needs a recorded V_s series");
  }
  if (traj.gains.size() != traj.size()) throw ParameterError("monitor_decrease needs recorded gains");
  cfg.validate();

  DecreaseReport report;
  std::size_t start = traj.size();
  for (std::size_t s = 0; s < traj.size(); ++s) {
    if (traj.gains[s].minCoeff() > gate) {
      start = s;
      break;
    }
  }
  if (start == traj.size()) return report;
  report.t_star = traj.times[start];
  report.tol = 1e-9 * traj.lyapunov_s[start] + 1e-12;

  // Steps [k, k+1] where some x_i changes sign.
  std::vector<bool> crossing(traj.size(), false);
  for (std::size_t k = start; k + 1 < traj.size(); ++k) {
    const Eigen::VectorXd& a = traj.states[k];
    const Eigen::VectorXd& b = traj.states[k + 1];
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if ((a[i] > 0.0 && b[i] < 0.0) || (a[i] < 0.0 && b[i] > 0.0)) {
        crossing[k] = true;
        break;
      }
    }
  }

  std::vector<std::pair<double, double>> series;
  series.reserve(traj.size() - start);
  for (std::size_t s = start; s < traj.size(); ++s) series.emplace_back(traj.times[s], traj.lyapunov_s[s]);
  if (series.size() < 2) {
    report.fraction = 1.0;
    return report;
  }
  const auto rates = dini_series(series);

  std::size_t ok = 0;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < rates.size(); ++q) {
    const std::size_t k = start + q;
    const bool blackout = crossing[k] || (k > start && crossing[k - 1]) ||
                          (k + 1 < traj.size() && crossing[k + 1]);
    if (blackout) {
      ++report.steps_blacked_out;
      continue;
    }
    ++report.steps_checked;
    const double excess = rates[q].second - report.tol;
    report.worst_violation = std::max(report.worst_violation, excess);
    if (excess <= 0.0) ++ok;
  }
  report.fraction = report.steps_checked ? static_cast<double>(ok) / report.steps_checked : 1.0;
  if (!report.steps_checked) report.worst_violation = 0.0;
  return report;
}

std::function<void(double, const dde::HistoryBuffer&, Trajectory&)> make_functional_recorder(
    FunctionalConfig cfg) {
  cfg.validate();
  return [cfg = std::move(cfg)](double t, const dde::HistoryBuffer& buf, Trajectory& traj) {
    traj.lyapunov_s.push_back(eval_Vs(buf, t, cfg));
    traj.lyapunov_m.push_back(eval_Vm(traj.states.back(), cfg.weights));
  };
}

nlohmann::json to_json(const DecreaseReport& report) {
  nlohmann::json j;
  j["t_star"] = report.t_star ? nlohmann::json(*report.t_star) : nlohmann::json(nullptr);
  j["fraction"] = report.fraction;
  j["worst_violation"] = report.worst_violation;
  j["tol"] = report.tol;
  return j;
}

}  // namespace ddstab::lyapunov
